"""Generic rigidity of frameworks with rotational crystallographic or cone symmetry."""

__version__ = "0.1.0"
