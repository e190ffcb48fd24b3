"""
DANCEKIT - knot-diagram danceability toolkit

Decides whether n dancers can trace a knot diagram while passing every
crossing on the under-strand first, finds the fewest dancers a diagram
needs, builds and verifies explicit schedules, and checks the known
danceability bounds over a knot table.

Version: 1.0.0
"""

__version__ = '1.0.0'
