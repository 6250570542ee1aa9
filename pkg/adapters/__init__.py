"""
Adapters between certificate forms: text, JSON and step tables
"""

from .certificate_adapter import CertificateAdapter

__all__ = ["CertificateAdapter"]
