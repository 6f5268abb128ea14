"""Build script: compiles the optional term-combination kernel.

The package is fully functional without the extension; ``Extension(...,
optional=True)`` turns any compiler failure into a warning and the import
machinery falls back to the pure-Python kernel.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "resurgent._kernels._ckernel",
                sources=["src/resurgent/_kernels/_ckernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
