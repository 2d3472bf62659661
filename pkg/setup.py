"""Setup script for the Quartic-Hull package.

This file is kept for backward compatibility with traditional setuptools-based installations.
For new installations, we recommend using Poetry (pyproject.toml).
"""

from setuptools import find_packages, setup

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

# Define requirements directly for setuptools compatibility
# These should match the dependencies in pyproject.toml
requirements = [
    "pydantic>=2.4.2",
    "numpy>=1.24.3",
    "python-dotenv>=1.0.0",
    "PyYAML>=6.0.1",
    "sympy>=1.12",
    "mpmath>=1.3.0",
    "pycddlib>=2.1.7,<3",
]

setup(
    name="quartic-hull",
    version="0.1.0",
    description="Klein polyhedra and unit-group fundamental domains of totally real biquadratic Galois fields",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "quartic-hull=quartic_hull.cli.app:main",
        ],
    },
)
