from .expansion_certifier import ExpansionCertifier

__all__ = ['ExpansionCertifier']
