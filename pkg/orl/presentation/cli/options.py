# orl/presentation/cli/options.py
"""Options partagées par les sous-commandes"""
import argparse

from orl.config.settings import RunConfig
from orl.domain.embedding import ConstantProfile


def add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="graine 64 bits de l'exécution")


def add_constants(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--profile", choices=[p.value for p in ConstantProfile], default=ConstantProfile.LAB.value)
    parser.add_argument("--eps1", default=None, help="ε₁ rationnel (profil lab)")
    parser.add_argument("--alpha1", default=None, help="α₁ rationnel (profil lab)")


def add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="graphe au format OGF")


def add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="fichier OGF de sortie")


def run_config(args: argparse.Namespace) -> RunConfig:
    """Valide les options communes (pydantic) avant exécution"""
    return RunConfig(
        command=args.command_name,
        seed=getattr(args, "seed", 0),
        profile=getattr(args, "profile", ConstantProfile.LAB.value),
        eps1=getattr(args, "eps1", None),
        alpha1=getattr(args, "alpha1", None),
        input_path=getattr(args, "input", None),
        output_path=getattr(args, "out", None),
    )
