"""Build the optional compiled lattice kernel.

If Cython or a C compiler is missing the package still installs and falls
back to the NumPy implementation at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "alphaleak.oracle._lattice",
                ["src/alphaleak/oracle/_lattice.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
