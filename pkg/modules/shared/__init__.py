"""
Shared Modules

Logging and the error hierarchy used across every package. Configuration,
serialization and pair selection import the numeric packages and are
imported from their own modules.
"""

from modules.shared.logger import ParadoxLogger
from modules.shared.errors import ConfigError, ParadoxError, SchemaError

__all__ = ['ParadoxLogger', 'ConfigError', 'ParadoxError', 'SchemaError']
