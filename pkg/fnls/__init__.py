# -*- coding: utf-8 -*-
"""
fnls package initializer.
Keep it lightweight; avoid importing numerical submodules here.
"""
__version__ = "0.1.0"

def get_version() -> str:
    return __version__
