import configparser
import shutil
from datetime import datetime
from pathlib import Path

from .bias import as_bias, as_gamma
from .engine import as_engine
from .errors import TsrpError
from .labels import as_label_format
from .settings import DEFAULTS
from .util import Singleton, parse_beta_list

__doc__ = "Internal classes and functions to manage configuration options."

# Output formats of the evaluation report
REPORT_FORMATS = ["text", "json"]


def _check_alpha(value: str) -> None:
    alpha = float(value)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"Alpha must be in [0, 1], got {value}.")


def _check_report_format(value: str) -> None:
    if value not in REPORT_FORMATS:
        raise ValueError(f"Report format must be one of {REPORT_FORMATS}.")


class ConfigurationParser(object, metaclass=Singleton):
    """Configuration parser (singleton class)."""

    def __init__(self):
        """Constructor.

        The ConfigurationParser loads the configuration file if it exists or creates
        a default one holding the default evaluation settings.
        """

        # Current version
        self._version = 1

        # Valid keys
        self.valid_keys = [
            "metric.alpha",
            "metric.gamma",
            "metric.recall_bias",
            "metric.precision_bias",
            "report.betas",
            "report.format",
            "engine.name",
            "labels.format",
        ]

        # Validators: each raises ValueError on an invalid value
        self._validators = {
            "metric.alpha": _check_alpha,
            "metric.gamma": as_gamma,
            "metric.recall_bias": as_bias,
            "metric.precision_bias": as_bias,
            "report.betas": parse_beta_list,
            "report.format": _check_report_format,
            "engine.name": as_engine,
            "labels.format": as_label_format,
        }

        # Configuration parser
        self._config = None

        # Configuration folder
        self._conf_path = Path(Path.home(), ".config/pytsrp")

        # Config file name
        self._conf_file = self._conf_path / "pytsrp.ini"

        # If the configuration file does not exist yet, create a default one
        if not self._conf_file.is_file():
            self._write_default()

        # Read it
        if self._config is None:
            self._config = configparser.ConfigParser()
        self._config.read(self._conf_file, encoding="utf-8")

    def reset(self):
        """Reset the configuration to default values, keeping a timestamped backup."""
        if self._conf_file.is_file():
            timestamp = datetime.strftime(datetime.now(), "%d%m%Y_%H%M%S")
            backup_file_name = (
                self._conf_file.parent / f"{self._conf_file.stem}_{timestamp}.ini"
            )
            shutil.copyfile(self._conf_file, backup_file_name)
        self._write_default()

    def __getitem__(self, key: str) -> str:
        """Get value for current key.

        Parameters
        ----------

        key: str
            Key to be queried.

        Returns
        -------

        value: str
            Value associated to requested key.
        """
        section, option = self._split(key)
        return self._config[section][option]

    def __setitem__(self, key: str, value: str):
        """Validate and set value for requested key, then save the file.

        Parameters
        ----------

        key: str
            Key to be updated.

        value: str
            Value to be associated to the requested key.
        """
        section, option = self._split(key)
        value = value.strip()
        if value == "":
            raise ValueError(f"Key {key} can not be set to ''.")
        try:
            self._validators[key](value)
        except (TsrpError, ValueError) as e:
            raise ValueError(f"Invalid value '{value}' for key '{key}': {e}")
        self._config[section][option] = value.lower()

        # Write the configuration file
        with open(self._conf_file, "w", encoding="utf-8") as configfile:
            self._config.write(configfile)

    @property
    def config_file(self) -> str:
        """Return full path of configuration file.

        Returns
        -------

        conf_file: str
            Full path to the configuration file.
        """
        return str(self._conf_file)

    @property
    def is_valid(self) -> bool:
        """Check current configuration.

        Returns
        -------

        is_valid: bool
            True if the configuration file has the current version and all its
            values are valid, False otherwise.
        """
        return self._validate()

    def keys(self) -> list:
        """Return the list of configuration keys.

        Returns
        -------

        keys: list[str]
            List of configuration keys.
        """
        return self.valid_keys

    def evaluation_defaults(self) -> dict:
        """Return the stored defaults keyed as expected by `resolve_config()`.

        Falls back to the built-in defaults for keys that are missing from an
        older configuration file.
        """
        mapping = {
            "alpha": "metric.alpha",
            "gamma": "metric.gamma",
            "recall_bias": "metric.recall_bias",
            "precision_bias": "metric.precision_bias",
            "betas": "report.betas",
            "engine": "engine.name",
            "format": "labels.format",
        }
        defaults = {}
        for name, key in mapping.items():
            try:
                defaults[name] = self[key]
            except ValueError:
                defaults[name] = DEFAULTS[name]
        return defaults

    def _split(self, key: str) -> tuple[str, str]:
        if key not in self.valid_keys:
            raise ValueError(f"Invalid configuration key '{key}'.")
        section, option = key.split(".")
        if section not in self._config.sections():
            raise ValueError(f"Invalid configuration key '{key}'.")
        if option not in self._config[section]:
            raise ValueError(f"Invalid configuration key '{key}'.")
        return section, option

    def _validate(self) -> bool:
        """Check current configuration.

        Returns
        -------

        is_valid: bool
           True if the configuration file is valid, False otherwise.
        """

        # Check that the version matches the latest
        if self._config["metadata"]["version"] != str(self._version):
            return False

        for key in self.valid_keys:
            try:
                self._validators[key](self[key])
            except (TsrpError, ValueError):
                return False
        return True

    def _write_default(self):
        """Write default configuration file."""

        # Initialize the configuration parser
        if self._config is None:
            self._config = configparser.ConfigParser()

        # Metadata information
        self._config["metadata"] = {}
        self._config["metadata"]["version"] = str(self._version)

        # Metric parameters
        self._config["metric"] = {}
        self._config["metric"]["alpha"] = DEFAULTS["alpha"]
        self._config["metric"]["gamma"] = DEFAULTS["gamma"]
        self._config["metric"]["recall_bias"] = DEFAULTS["recall_bias"]
        self._config["metric"]["precision_bias"] = DEFAULTS["precision_bias"]

        # Report
        self._config["report"] = {}
        self._config["report"]["betas"] = DEFAULTS["betas"]
        self._config["report"]["format"] = REPORT_FORMATS[0]

        # Engine
        self._config["engine"] = {}
        self._config["engine"]["name"] = DEFAULTS["engine"]

        # Label files
        self._config["labels"] = {}
        self._config["labels"]["format"] = DEFAULTS["format"]

        # Make sure the .config/pytsrp folder exists
        Path(self._conf_path).mkdir(parents=True, exist_ok=True)

        # Write the configuration file
        with open(self._conf_file, "w", encoding="utf-8") as configfile:
            self._config.write(configfile)
