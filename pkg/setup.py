from setuptools import setup, find_packages

def read_requirements():
    """Read requirements.txt and return as list."""
    with open("requirements.txt") as f:
        return [line.strip() for line in f if line.strip() and not line.startswith("#")]

setup(
    name="fnls-lab",
    version="0.1.0",
    author="fnls-lab contributors",
    description="Pseudo-spectral laboratory for the defocusing fractional cubic NLS on the torus.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    license="MIT",
    packages=find_packages(exclude=("tests", "docs")),
    include_package_data=True,
    package_data={"fnls": ["config.yaml", "configs/*.yaml"]},
    install_requires=read_requirements(),
    extras_require={"test": ["pytest>=7.0"]},
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "fnls=fnls.main:main",  # CLI entrypoint
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: POSIX :: Linux",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
