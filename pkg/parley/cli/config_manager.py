"""
Configuration manager for parley experiments.

The experiment config is one YAML file. Values are layered
file < environment (PARLEY_* / .env) < command-line flags, and the result
is validated into an ExperimentConfig before anything runs.
"""

from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import ValidationError

from parley.cli.utils.errors import ConfigurationError, FileSystemError
from parley.cli.utils.fs import read_text, write_text
from parley.src.config import ExperimentConfig, RuntimeSettings

# relative data paths resolve against the config file's directory; output_dir against the cwd
PATH_KEYS = ("domain_path", "database_path", "templates_dir")


class ConfigManager:
    """
    Loads, layers and validates the experiment configuration.

    Args:
        config_path: YAML config file; None starts from the built-in defaults
        settings: Environment overrides (read from the environment when omitted)
    """

    def __init__(self, config_path: Optional[Path] = None, settings: Optional[RuntimeSettings] = None):
        self.config_path = Path(config_path).expanduser().resolve() if config_path else None
        self.settings = settings if settings is not None else RuntimeSettings()
        self._data: Dict[str, Any] = {}
        self._config: Optional[ExperimentConfig] = None

    def load(self) -> bool:
        """
        Read the config file.

        Returns:
            True if a file was read, False when running on defaults

        Raises:
            ConfigurationError: If the file cannot be read or is not a YAML mapping
        """
        self._config = None
        if self.config_path is None:
            self._data = {}
            return False

        try:
            data = yaml.safe_load(read_text(self.config_path))
        except (yaml.YAMLError, FileSystemError) as e:
            raise ConfigurationError(f"Failed to load configuration {self.config_path}: {e}")
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigurationError(f"{self.config_path}: top level must be a mapping")

        for key in PATH_KEYS:
            if data.get(key) is not None:
                path = Path(data[key]).expanduser()
                data[key] = str(path if path.is_absolute() else self.config_path.parent / path)
        self._data = data
        return True

    def apply_overrides(
        self,
        seed: Optional[int] = None,
        output_dir: Optional[Path] = None,
        mode: Optional[str] = None,
        **fields: Any,
    ) -> None:
        """
        Layer environment and flag values over the loaded file.

        Args:
            seed: --seed
            output_dir: --out
            mode: --mode (acts or language)
            fields: Further top-level config fields set by flags; None values are ignored
        """
        self._config = None
        if self.settings.output_dir is not None:
            self._data["output_dir"] = str(self.settings.output_dir)

        if seed is not None:
            self._data["seed"] = seed
        if output_dir is not None:
            self._data["output_dir"] = str(output_dir)
        if mode is not None:
            episode = dict(self._data.get("episode") or {})
            episode["channel_mode"] = mode
            self._data["episode"] = episode
        for key, value in fields.items():
            if value is not None:
                self._data[key] = value

    def get_config(self) -> ExperimentConfig:
        """
        Raises:
            ConfigurationError: If the layered values do not validate
        """
        if self._config is None:
            try:
                self._config = ExperimentConfig.model_validate(self._data)
            except ValidationError as e:
                source = self.config_path or "defaults"
                raise ConfigurationError(f"Invalid configuration ({source}):\n{e}")
        return self._config

    def to_yaml(self) -> str:
        return dump_config(self.get_config())

    def save(self, path: Path) -> None:
        try:
            write_text(path, self.to_yaml())
        except FileSystemError as e:
            raise ConfigurationError(f"Failed to save configuration: {e.message}")


def dump_config(cfg: ExperimentConfig) -> str:
    return yaml.safe_dump(cfg.model_dump(mode="json"), sort_keys=False)


def load_config(
    config_path: Optional[Path] = None,
    seed: Optional[int] = None,
    output_dir: Optional[Path] = None,
    mode: Optional[str] = None,
    **fields: Any,
) -> ExperimentConfig:
    """Load, layer and validate in one call."""
    manager = ConfigManager(config_path)
    manager.load()
    manager.apply_overrides(seed=seed, output_dir=output_dir, mode=mode, **fields)
    return manager.get_config()
