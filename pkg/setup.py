"""
███████╗████████╗███╗   ███╗██╗     ██████╗  █████╗ ██████╗ ██╗  ██╗
██╔════╝╚══██╔══╝████╗ ████║██║     ██╔══██╗██╔══██╗██╔══██╗██║ ██╔╝
███████╗   ██║   ██╔████╔██║██║     ██║  ██║███████║██████╔╝█████╔╝
╚════██║   ██║   ██║╚██╔╝██║██║     ██║  ██║██╔══██║██╔══██╗██╔═██╗
███████║   ██║   ██║ ╚═╝ ██║███████╗██████╔╝██║  ██║██║  ██║██║  ██╗
╚══════╝   ╚═╝   ╚═╝     ╚═╝╚══════╝╚═════╝ ╚═╝  ╚═╝╚═╝  ╚═╝╚═╝  ╚═╝

STMLDark - STM-induced excitation of molecular dark states.
Licensed under the GNU General Public License v3.0

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
GNU General Public License for more details.

For a copy of the GNU GPLv3, see <https://www.gnu.org/licenses/>.
"""

# Imports
from setuptools import setup, find_packages

# Setup
setup(
    name="STMLDark",
    version="1.0.0",
    packages=find_packages(include=["stmldark", "stmldark.*"]),
    include_package_data=True,
    python_requires=">=3.9",
    install_requires=[
        "toml~=0.10.2",
        "rich~=13.9.4",
        "typer>=0.12",
        "pillow~=11.1.0",
        "numpy>=1.24",
        "scipy>=1.10",
    ],
    extras_require={
        "test": ["pytest>=7.4", "hypothesis>=6.80"],
    },
    entry_points={
        "console_scripts": [
            "stmldark=stmldark.__main__:main",
        ],
    },
)
