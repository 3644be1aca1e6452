from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [Extension("wittram._ckernels", ["src/wittram/_ckernels.pyx"])],
        language_level=3,
    ),
)
