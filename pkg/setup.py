"""Build script for the optional compiled basin kernel.

The package works without it (pure-Python fallback), so a failed compile only
prints a warning.  OpenMP is used when the compiler accepts ``-fopenmp``.
"""

import os
import shutil
import subprocess
import sys
import tempfile

from setuptools import Extension, setup

# exact IEEE semantics: the kernel must agree bit for bit with CPython complex math
BASE_FLAGS = ["-O2", "-ffp-contract=off", "-fno-fast-math"]


def _has_openmp():
    if os.environ.get("OCTAROOT_NO_OPENMP"):
        return False
    cc = os.environ.get("CC", "cc")
    if shutil.which(cc) is None:
        return False
    with tempfile.TemporaryDirectory() as tmp:
        src = os.path.join(tmp, "t.c")
        with open(src, "w") as fh:
            fh.write("#include <omp.h>\nint main(void){return omp_get_max_threads() < 1;}\n")
        res = subprocess.run([cc, "-fopenmp", src, "-o", os.path.join(tmp, "t")],
                             capture_output=True)
        return res.returncode == 0


def _extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError as exc:
        print(f"octaroot: building without the compiled kernel ({exc})", file=sys.stderr)
        return []
    omp = _has_openmp()
    ext = Extension(
        "octaroot._kernel",
        ["src/octaroot/_kernel.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=BASE_FLAGS + (["-fopenmp"] if omp else []),
        extra_link_args=["-fopenmp"] if omp else [],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        optional=True,
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=_extensions())
