"""
Services module: the state-space computations behind the msr command
"""

from src.services import bargmann, geodesic, majorana, npc, statespace, transforms

__all__ = ["bargmann", "geodesic", "majorana", "npc", "statespace", "transforms"]
