"""
File:           __init__.py
Created on:     12/10/26, 3:40 pm
"""
from pathlib import Path
import os

from dotenv import load_dotenv


BASE_DIR = Path(__file__).resolve().parents[1]
dotenv_path = BASE_DIR / "env" / ".env"
load_dotenv(dotenv_path=dotenv_path)

DATA_DIR = BASE_DIR / "data"
DATA_DIR.mkdir(exist_ok=True)
LOG_DIR = Path(os.environ.get("OTTO_LOG_DIR", BASE_DIR / "logs"))
LOG_DIR.mkdir(parents=True, exist_ok=True)
