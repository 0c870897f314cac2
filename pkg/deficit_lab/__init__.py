"""
deficit-lab: one-way information deficits and classical correlations of
small bipartite quantum states.

Contains:
- quantum: States, channels, measurements and per-measurement measures
- engine: Measurement optimizer and command execution
- scenarios: Channel-ensemble constructions and self-checking reproductions
- utils: Document conversion and report formatting
- cli: The deficit-lab command
"""

__version__ = "0.1.0"
