from setuptools import setup

try:
    import numpy  # noqa: F401
    from Cython.Build import cythonize
except ImportError:  # no compiler toolchain: pure-Python install
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("tsdijkstra._kernel", ["src/tsdijkstra/_kernel.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
