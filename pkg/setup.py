# Always prefer setuptools over distutils
from setuptools import setup, find_packages
import pathlib

here = pathlib.Path(__file__).parent.resolve()
long_description = (here / "README.md").read_text(encoding="utf-8")


def read_requirements(requirements_file):
    with open(requirements_file) as f:
        return [line for line in f.read().splitlines() if line.strip()]


setup(
    name="fountainsim",  # Required
    # Keep in sync with fountainsim/__init__.py
    version="0.1.0",  # Required
    description="fountainsim is a Python library "
                "for simulating a desk-scale caesium fountain frequency standard.",  # Optional
    long_description=long_description,  # Optional
    long_description_content_type="text/markdown",  # Optional (see note above)
    classifiers=[  # Optional
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.10",
        "Operating System :: OS Independent",
    ],
    keywords="atomic clock, caesium fountain, ramsey, optical pumping, allan deviation",  # Optional
    packages=find_packages(),  # Required
    python_requires=">=3.10, <4",
    install_requires=read_requirements("requirements.txt"),
    extras_require={  # Optional
        "dev": read_requirements("requirements_dev.txt"),
        "docs": read_requirements("requirements_docs.txt"),
    },
    # Bundled run configurations and parameter ranges
    package_data={  # Optional
        "fountainsim": ["conf/*"],
    },
    entry_points={  # Optional
        "console_scripts": [
            "fountain-sim=fountainsim.cli:main",
        ],
    },
)
