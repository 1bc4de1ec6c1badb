"""Command handlers behind the rsumset subcommands."""

from restricted_sumsets.commands.scan import config_from_args, run_scan, scan_command
from restricted_sumsets.commands.single import COMMANDS, run_single

__all__ = ["COMMANDS", "config_from_args", "run_scan", "run_single", "scan_command"]
