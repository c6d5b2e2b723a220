from ..laws.domains import predict_beta, section_domain

__all__ = ["predict_beta", "section_domain"]
