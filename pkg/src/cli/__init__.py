"""
File:           __init__.py
Created on:     15/10/26, 2:55 pm
"""
from .run_config import RunConfig, SweepAxis, ConfigError, load_config
from .runner import run, EXIT_OK, EXIT_ERROR, EXIT_NOT_AN_ENGINE
