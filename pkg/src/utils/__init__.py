"""
File codecs and figure output
"""

from src.utils.serialization import read_json, to_json, write_output
from src.utils.svg import render_tracks

__all__ = ["read_json", "render_tracks", "to_json", "write_output"]
