"""Real forms of o(n,C), boost weights, orbit closures and curvature checks for Wick rotations."""

__version__ = "0.1.0"
