"""
Src folder
"""
# seppoly/src/__init__.py

__version__ = "0.1.0"
