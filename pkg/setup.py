import os

from setuptools import Extension, setup

# The compiled kernels are optional: cblow.kernels falls back to the
# pure-Python implementation when the extension is missing.
ext_modules = []
if os.environ.get("CBLOW_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("cblow._ckernels", ["src/cblow/_ckernels.pyx"], optional=True)],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
