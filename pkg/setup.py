"""Setup script for sigma-spectra."""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line.strip() for line in fh
                     if line.strip() and not line.startswith("#") and not line.startswith("pytest")]

setup(
    name="sigma-spectra",
    version="0.1.0",
    author="sigma-spectra developers",
    description="Colour spectra of sigma-hypergraphs under (alpha, beta) colour bounds",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["core", "core.*", "execution", "execution.*", "monitoring", "monitoring.*"]),
    python_requires=">=3.9",
    install_requires=requirements,
    entry_points={"console_scripts": ["sigma-spectra = core.main:main"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
