"""
Tools package initialization
"""

from tools.coupled_tools import register_coupled_tools
from tools.run_tools import register_run_tools
from tools.transport_tools import register_transport_tools

__all__ = ["register_coupled_tools", "register_run_tools", "register_transport_tools"]
