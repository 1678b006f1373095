import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PPFAN_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "ppfan._ddcore",
                    sources=["src/ppfan/_ddcore.pyx"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython: pure-Python kernel only
        ext_modules = []

setup(ext_modules=ext_modules)
