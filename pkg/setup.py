from setuptools import find_packages, setup


def find_required():
    with open("requirements.txt") as f:
        return f.read().splitlines()


def find_dev_required():
    with open("requirements-dev.txt") as f:
        return f.read().splitlines()


setup(
    name="tospdc",
    version="0.1.0",
    description=("Design calculations for photon-triplet generation by third-order "
                 "spontaneous parametric downconversion in silica nanofibers"),
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    python_requires=">=3.8",
    license="Apache-2.0",
    packages=find_packages(exclude=["tests", "tests.*", "scenarios", "contexts"]),
    package_data={"tospdc": ["py.typed"]},
    install_requires=find_required(),
    tests_require=find_dev_required(),
    entry_points={
        "console_scripts": ["tospdc = tospdc.cli:main"],
    },
    classifiers=[
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Physics",
        "Typing :: Typed",
    ],
)
