"""
Command-line front end: job specifications, commands and output formatters.
"""
