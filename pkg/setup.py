import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pursuit.solver._ckernel",
                ["src/pursuit/solver/_ckernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    sys.stderr.write(f"building without compiled solver kernel: {exc}\n")

setup(ext_modules=ext_modules)
