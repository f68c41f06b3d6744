from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="arcade",
    version="1.0.0",
    description="Finite relation and cylindric algebra atom structures, rainbow constructions and atomic games",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests*", "examples*"]),
    py_modules=["Main"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Operating System :: OS Independent",
        "Environment :: Console",
    ],
    keywords=[
        "relation algebra", "cylindric algebra", "atom structure", "rainbow",
        "pebble game", "ehrenfeucht-fraisse", "chromatic number", "cli"
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24.0",
        "networkx>=3.2",
        "colorama>=0.4.6",
        "reportlab>=4.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=3.0.0",
            "mypy>=1.7.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "arcade=Main:Main",
        ],
    },
)
