"""QES Engine - exact operator algebra, spectra and elliptic cross-checks for the A2/G2 elliptic Calogero-Moser models."""

__version__ = "0.1.0"
