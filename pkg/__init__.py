"""
Discriminant-bound certifier - checkable non-existence proofs for mod-p Galois representations
判别式界证明器：生成并独立校验伽罗瓦表示不存在性的证明证书
"""

__version__ = "1.0.0"
__author__ = "Discriminant Certifier Team"
