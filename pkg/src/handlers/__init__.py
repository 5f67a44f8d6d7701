"""Command handlers for the CLI."""

from src.handlers.commands import CommandHandler, CommandOutput

__all__ = ["CommandHandler", "CommandOutput"]
