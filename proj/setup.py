"""Builds the compiled module by driving the project's CMake configuration.

The extension is produced by the same CMake targets a C++ build uses, then
copied to wherever setuptools wants it (site-packages for a wheel, the source
tree for an editable install).
"""

import os
import shutil
import subprocess
import sys
from glob import glob
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DREACTLINE_BUILD_CLI=OFF",
                "-DREACTLINE_BUILD_TESTS=OFF",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            [
                "cmake",
                "--build", str(build_dir),
                "--target", "_core",
                "-j", str(os.cpu_count() or 1),
            ],
            check=True,
        )

        built = glob(str(build_dir / "python" / "reactline" / "_core*"))
        if not built:
            raise RuntimeError("CMake did not produce the _core module")
        dest_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        dest_dir.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[0], dest_dir / Path(built[0]).name)


setup(
    ext_modules=[CMakeExtension("reactline._core")],
    cmdclass={"build_ext": CMakeBuild},
)
