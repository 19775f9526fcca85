from pathlib import Path

from setuptools import find_packages, setup

# Read the contents of README file
source_root = Path(".")
with (source_root / "README.md").open(encoding="utf-8") as f:
    long_description = f.read()

# Read the requirements
with (source_root / "requirements.txt").open(encoding="utf8") as f:
    requirements = f.readlines()

try:
    version = (source_root / "VERSION").read_text().rstrip("\n")
except FileNotFoundError:
    version = "0.0.dev0"

with open(source_root / "src/imbalance_metrics/version.py", "w") as version_file:
    version_file.write(f"__version__ = '{version}'\n")

setup(
    name="imbalance-metrics",
    version=version,
    packages=find_packages("src"),
    package_dir={"": "src"},
    license="MIT",
    description="Classifier quality measures for imbalanced binary test sets",
    python_requires=">=3.8, <3.13",
    install_requires=requirements,
    package_data={
        "imbalance_metrics": [
            "py.typed",
            "config_default.yaml",
            "report/templates/*.txt",
            "report/templates/*.gp",
            "repro/reference_tables.yaml",
        ],
    },
    include_package_data=True,
    classifiers=[
        "Development Status :: 4 - Beta",
        "License :: OSI Approved :: MIT License",
        "Environment :: Console",
        "Operating System :: OS Independent",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Developers",
        "Topic :: Scientific/Engineering",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    keywords="classification metrics imbalanced-data confusion-matrix evaluation",
    long_description=long_description,
    long_description_content_type="text/markdown",
    entry_points={
        "console_scripts": [
            "imbalance_metrics = imbalance_metrics.controller.console:main",
        ]
    },
    options={"bdist_wheel": {"universal": True}},
)
