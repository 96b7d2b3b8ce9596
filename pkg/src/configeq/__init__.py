"""Configuration sets of finitely generated groups and the word calculus
used to compare them."""

__version__ = "0.1.0"
