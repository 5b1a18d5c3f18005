# Командная оболочка ordstat: команды и вывод CSV/JSON
__version__ = "0.1.0"
