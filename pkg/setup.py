from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "cliquestream._kernels_c",
        ["src/cliquestream/_kernels_c.pyx"],
        extra_compile_args=["-O2"],
    ),
]

setup(ext_modules=cythonize(extensions, language_level=3))
