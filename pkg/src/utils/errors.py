"""
File:           errors.py
Created on:     12/10/26, 4:05 pm
"""


class OttoEngineError(Exception):
    """ Base class of every error raised by the package """
    pass


class NotAnEngineError(OttoEngineError):
    """ The cycle or the constrained optimum does not produce positive work """
    pass
