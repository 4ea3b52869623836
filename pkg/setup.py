import os

from setuptools import setup

ext_modules = []
if not os.environ.get("L3KIT_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("l3kit._elim_ext", ["src/l3kit/_elim_ext.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
