"""
File:           config_reader.py
Created on:     15/10/26, 2:10 pm
"""
from typing import Dict, Any
import json
from pathlib import Path

from dotenv import dotenv_values

from src.utils.errors import OttoEngineError
from src.utils.logger import LogFacade


logger: LogFacade = LogFacade.get_logger("config_reader")


class ConfigReaderError(OttoEngineError):
    pass


class ConfigReader:
    """ Reads a run configuration file and store it in memory.
    Flat `key = value` text by default, JSON when the file suffix is .json """

    def __init__(self, config_file_path: Path):
        self._config_file_path = Path(config_file_path)
        if not self._config_file_path.is_file():
            raise ConfigReaderError(f"Config file {self._config_file_path} doesn't exist")
        if self._config_file_path.suffix.lower() == ".json":
            self._config: Dict[str, Any] = self._read_json()
        else:
            self._config: Dict[str, Any] = self._read_flat()
        logger.debug(f"Read {len(self._config)} keys from {self._config_file_path}")

    def _read_json(self) -> Dict[str, Any]:
        with open(self._config_file_path, mode="r") as fp_:
            try:
                config = json.load(fp_, object_hook=self.json_object_hook)
            except json.JSONDecodeError as err:
                logger.info(f"Error decoding config file {self._config_file_path}")
                logger.info(err)
                raise ConfigReaderError(f"Invalid JSON in {self._config_file_path}: {err}") from err
        if not isinstance(config, dict):
            raise ConfigReaderError(f"{self._config_file_path} must hold a JSON object")
        return config

    def _read_flat(self) -> Dict[str, Any]:
        values = dotenv_values(self._config_file_path, interpolate=False)
        return self.json_object_hook({key: value for key, value in values.items()})

    def __getitem__(self, item: str):
        return self._config[item]

    def __setitem__(self, key, value):
        self._config[key] = value

    def __contains__(self, item: str):
        return item in self._config

    def get(self, item: str, default=None):
        return self._config.get(item, default)

    def as_dict(self) -> Dict[str, Any]:
        return dict(self._config)

    @staticmethod
    def json_object_hook(input_dict: Dict):
        """ Normalise values by key. *levels keys become lists of floats, a bare key without a
        value becomes None and string values are stripped. Every other conversion is left to the
        consumer, which knows the type of each key. """
        output_dict = dict()
        for key, value in input_dict.items():
            key = key.strip()
            if isinstance(value, str):
                value = value.strip()
            if key.endswith("levels") and isinstance(value, (str, list)):
                items = value.split(",") if isinstance(value, str) else value
                try:
                    output_dict[key] = [float(item) for item in items if str(item).strip()]
                except (TypeError, ValueError) as err:
                    raise ConfigReaderError(f"{key}: cannot parse levels {value!r}") from err
            else:
                output_dict[key] = value
        return output_dict
