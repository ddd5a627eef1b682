#!/usr/bin/env python
try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup

# We use calendar versioning
version = "2026.10.17"

with open("README.md") as readme_file:
    long_description = readme_file.read()

setup(
    name="hyperdyn",
    version=version,
    description="Exact and budgeted checks of the dynamics induced on symmetric products and their suspensions.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=["hyperdyn", "hyperdyn.detectors", "hyperdyn.harness"],
    package_data={"hyperdyn.harness": ["templates/*.j2"]},
    python_requires=">=3.10",
    install_requires=[
        "networkx>=3.2",
        "pyyaml>=6.0",
        "jinja2>=3.1",
    ],
    entry_points={"console_scripts": ["hyperdyn=hyperdyn.harness.cli:run"]},
    license="BSD",
    zip_safe=False,
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "License :: OSI Approved :: BSD License",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: Implementation :: CPython",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords=(
        "topological dynamics, hyperspaces, symmetric products, suspensions, "
        "transitivity, sensitivity, symbolic dynamics"
    ),
)
