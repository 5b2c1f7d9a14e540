"""hookforge: build, check, simulate and deploy XRPL hooks from visual blocks."""

__version__ = "0.1.0"
