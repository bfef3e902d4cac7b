import numbers

from fountainsim.exceptions import ConfigError

PARAM_TYPES = ("int", "float", "bool", "str", "float_list", "choice")


class Parameter(object):
    """
    Class to define a configuration parameter: its name, allowed range, type and default.
    Values read from a run configuration are checked against it before any simulation starts.

    Attributes
    ----------
    name : str
        Name of the parameter. It is the key in its configuration block
    min_value : float, optional (default=None)
        Minimum allowed value (inclusive), no lower bound when None
    max_value : float, optional (default=None)
        Maximum allowed value (inclusive), no upper bound when None
    param_type : str
        Type of the parameter ('int', 'float', 'bool', 'str', 'float_list', 'choice')
    choices : list, optional (default=None)
        Allowed values when param_type='choice'
    nullable : bool, optional (default=False)
        Whether null is accepted
    default : object, optional (default=None)
        Value used when the key is absent
    """

    def __init__(self, name: str, param_type: str, min_value=None, max_value=None, choices: list = None,
                 nullable: bool = False, default=None):
        if param_type not in PARAM_TYPES:
            raise ValueError(f"Unknown parameter type {param_type!r} for {name}")
        if param_type == "choice" and not choices:
            raise ValueError(f"Parameter {name} of type 'choice' needs choices")
        self.name = name
        self.param_type = param_type
        self.min_value = min_value
        self.max_value = max_value
        self.choices = choices
        self.nullable = nullable
        self.default = default

    def _check_range(self, value, label=None):
        label = label or self.name
        if self.min_value is not None and value < self.min_value:
            raise ConfigError(f"{label}={value} is below the minimum {self.min_value}")
        if self.max_value is not None and value > self.max_value:
            raise ConfigError(f"{label}={value} is above the maximum {self.max_value}")

    @staticmethod
    def _is_number(value):
        return isinstance(value, numbers.Real) and not isinstance(value, bool)

    def validate(self, value):
        """
        Returns the value with its declared type, or raises if it is not allowed.
            1) Accepts null only for nullable parameters
            2) Verifies the type
            3) Verifies the range (each element for lists)

        Parameters
        ----------
        value : object
            Value read from the configuration

        Returns
        -------
        ret : int, float, bool, str, list or None
            Validated value

        Raises
        ------
        ConfigError
            If the value has the wrong type or is out of range
        """
        if value is None:
            if self.nullable:
                return None
            raise ConfigError(f"{self.name} must not be null")
        if self.param_type == "int":
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                if not (self._is_number(value) and float(value).is_integer()):
                    raise ConfigError(f"{self.name} must be an integer, got {value!r}")
            ret = int(value)
        elif self.param_type == "float":
            if not self._is_number(value):
                raise ConfigError(f"{self.name} must be a number, got {value!r}")
            ret = float(value)
        elif self.param_type == "bool":
            if not isinstance(value, bool):
                raise ConfigError(f"{self.name} must be true or false, got {value!r}")
            return value
        elif self.param_type == "str":
            if not isinstance(value, str):
                raise ConfigError(f"{self.name} must be a string, got {value!r}")
            return value
        elif self.param_type == "choice":
            if value not in self.choices:
                raise ConfigError(f"{self.name} must be one of {self.choices}, got {value!r}")
            return value
        else:
            if not isinstance(value, list) or not value or not all(self._is_number(v) for v in value):
                raise ConfigError(f"{self.name} must be a non-empty list of numbers, got {value!r}")
            ret = [float(v) for v in value]
            for i, v in enumerate(ret):
                self._check_range(v, f"{self.name}[{i}]")
            return ret
        self._check_range(ret)
        return ret

    def resolve(self, value=None, present=False):
        """Validated value, or the validated default when the key is absent."""
        return self.validate(value if present else self.default)

    def to_dict(self):
        return {"name": self.name, "param_type": self.param_type, "min_value": self.min_value,
                "max_value": self.max_value, "choices": self.choices, "nullable": self.nullable,
                "default": self.default}

    def __eq__(self, other_parameter):
        """Overrides the default implementation"""
        return isinstance(other_parameter, Parameter) and self.to_dict() == other_parameter.to_dict()

    def __str__(self):
        """Overrides the default implementation"""
        bounds = f", {self.min_value}, {self.max_value}" if self.param_type in ("int", "float", "float_list") else ""
        return f"Parameter('{self.name}', {self.param_type}{bounds})"

    def __repr__(self):
        """Overrides the default implementation"""
        return self.__str__()

    def __hash__(self):
        """Overrides the default implementation"""
        return hash((self.name, self.param_type, self.min_value, self.max_value))
