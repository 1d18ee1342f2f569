"""
This module contains the various utilities shared by the pipelines and the
executables: run configuration, file helpers and the CLI error wrapper.
"""
