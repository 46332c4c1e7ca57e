"""collapse-lab: collapse-type witness searches for conjugation racks.

Layers: q-binomial arithmetic (qarith), finite fields (gf), matrix groups and
central quotients (matgrp), conjugation racks (rack), witness searches and
screens (criteria), semisimple-class machinery (ssclass), and a CLI (cli).
"""

__version__ = "0.1.0"

__all__ = [
    "qarith",
    "gf",
    "matgrp",
    "rack",
    "criteria",
    "ssclass",
    "witnesses",
    "cli",
]
