import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CMPK_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("cmpk._scalar_cy", ["src/cmpk/_scalar_cy.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # pure-Python kernels are selected at import when the extension is absent
        ext_modules = []

setup(ext_modules=ext_modules)
