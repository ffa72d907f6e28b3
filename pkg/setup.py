from setuptools import setup, find_packages

setup(
    name="ifpn_lab",
    version="1.0.0",
    packages=find_packages("src"),
    package_dir={"": "src"},
    install_requires=[
        "numpy"
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": ["ifpn=ifpn_lab.cli:main"],
    },
    python_requires=">=3.8",
    description="Numerical verification toolkit for intuitionistic fuzzy pseudo normed linear spaces",
)
