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

STMLDark: simulate STM-induced luminescence from molecular dark states.
"""


# Version
__version__ = "1.0.0"
