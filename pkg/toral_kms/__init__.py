"""toral-kms - KMS states of unit-group actions on number-field tori."""

__version__ = "0.1.0"

__all__ = ["__version__"]
