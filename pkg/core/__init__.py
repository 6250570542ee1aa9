"""
Core modules for the discriminant-bound certifier
"""
