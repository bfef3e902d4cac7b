from .parameter import Parameter, PARAM_TYPES
from .run_config import RunConfig, load_parameter_ranges, SCHEMA_VERSION, EXPERIMENTS
