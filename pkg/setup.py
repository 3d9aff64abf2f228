"""Build script: compiles the optional sparse-arithmetic kernel.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so the extension is marked optional
and any build failure is non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("qverify._kernel", ["src/qverify/_kernel.pyx"], optional=True)],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
