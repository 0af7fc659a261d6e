"""Testes do sistema."""
