"""CMake-driven extension build for the shiftconv python module.

The extension is produced by the repository's own CMake project (target
_shiftconv), so the C++ core is compiled exactly once with the same flags
the library and CLI use.  setuptools only orchestrates: configure into a
scratch directory, build the one target, then pick the module up from the
directory it asked CMake to place it in.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name, sourcedir=""):
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        extdir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_temp = Path(self.build_temp) / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)

        cfg = "Debug" if self.debug else "Release"
        cmake_args = [
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}{os.sep}",
            f"-DPython_EXECUTABLE={sys.executable}",
            f"-DCMAKE_BUILD_TYPE={cfg}",
            "-DSHIFTCONV_PYTHON=ON",
            "-DSHIFTCONV_PYTHON_ONLY=ON",
        ]
        subprocess.run(
            ["cmake", ext.sourcedir, *cmake_args], cwd=build_temp, check=True
        )
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_shiftconv",
             "--parallel", str(os.cpu_count() or 2)],
            cwd=build_temp, check=True,
        )


setup(
    ext_modules=[CMakeExtension("shiftconv._shiftconv")],
    cmdclass={"build_ext": CMakeBuild},
)
