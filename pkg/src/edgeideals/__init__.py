"""
Ideales binomiales de aristas: bases de Gröbner, tablas de Betti y oráculos
"""

__version__ = "0.1.0"
