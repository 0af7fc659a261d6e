"""Sistema de Predição do Caminho de um Sistema Aberto."""
__version__ = "1.0.0"
