import os
from os.path import dirname

from setuptools import setup

__version__ = open("VERSION", "r").read().strip()
__lib_name__ = "qwcpt"


this_directory = os.path.abspath(dirname(__file__))
with open(os.path.join(this_directory, "README.md")) as f:
    long_description = f.read()


setup(
    name=__lib_name__,
    version=__version__,
    packages=["qwcpt"],
    package_dir={"qwcpt": "python/qwcpt"},
    description="Dark resonances and coherent population trapping in double tunneling-coupled quantum wells.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="Apache-2.0",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Natural Language :: English",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: Implementation :: CPython",
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    entry_points={"console_scripts": ["qwcpt = qwcpt.cli:main"]},
    zip_safe=False,
    install_requires=["numpy>=1.16", "scipy>=1.6", "pyarrow>=10.0.1"],
    extras_require={"test": "pytest"},
    python_requires=">=3.8",
)
