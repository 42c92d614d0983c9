"""
Exact verification of genus-1 Belyi maps and the catalog that records them
"""
__version__ = "0.1.0"
