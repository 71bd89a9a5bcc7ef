import glob
import os

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup

# The extension compiles the whole core; there is no separate shared library.
sources = ["bindings/py_module.cpp"] + sorted(glob.glob("src/*.cpp"))

eigen_include = os.environ.get("EIGEN_INCLUDE", "/usr/include/eigen3")

ext = Pybind11Extension(
    "eegclass._core",
    sources,
    include_dirs=["include", "vendor", eigen_include],
    cxx_std=20,
)

ParallelCompile("NPY_NUM_BUILD_JOBS").install()

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
