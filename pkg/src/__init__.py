"""msr-curves

Majorana star decomposition of geodesics and null phase curves.
"""

__version__ = "0.1.0"
