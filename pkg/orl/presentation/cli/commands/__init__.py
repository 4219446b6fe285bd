from .construction import setup_construction_commands
from .embedding import setup_embedding_commands
from .graphs import setup_graph_commands
from .qeh import setup_qeh_commands
from .verify import setup_verify_commands

__all__ = [
    'setup_construction_commands', 'setup_embedding_commands', 'setup_graph_commands',
    'setup_qeh_commands', 'setup_verify_commands',
]
