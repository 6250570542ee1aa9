"""
Client interface for the discriminant-bound certifier
"""
