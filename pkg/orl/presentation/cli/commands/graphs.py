# orl/presentation/cli/commands/graphs.py
"""
Commandes de génération et d'analyse de graphes : gen-random, closure,
find-pattern
"""
import numpy as np

from orl.domain.errors import ParameterError
from orl.domain.ordered_graph import OrderedGraph
from orl.domain.patterns import parse_pattern_name
from orl.infrastructure.random_streams import RandomStreams
from orl.presentation.cli.options import add_input, add_output, add_seed, run_config
from orl.presentation.cli.report import Report


def random_graph(n: int, p: float, seed: int) -> OrderedGraph:
    """G(n, p) ordonné : chaque paire u < v tirée indépendamment"""
    if n < 0 or not 0 <= p <= 1:
        raise ParameterError(f"need n >= 0 and p in [0, 1] (got n={n}, p={p})")
    rng = RandomStreams(seed).stream("gen-random")
    draws = rng.random((n, n)) < p
    us, vs = np.nonzero(np.triu(draws, k=1))
    return OrderedGraph.from_edges(n, zip(us.tolist(), vs.tolist()))


def setup_graph_commands(subparsers, closure_service, pattern_service, codec):
    """Enregistre les commandes de graphes avec injection de dépendances"""

    async def gen_random(args) -> Report:
        config = run_config(args)
        graph = random_graph(args.n, args.p, config.seed)
        report = Report("gen-random", config.seed)
        report.line(f"G({args.n}, {args.p}) with {graph.edge_count} edges")
        if config.output_path:
            await codec.write_graph(config.output_path, graph,
                                    [f"gen-random n={args.n} p={args.p} seed={config.seed}"])
            report.field("out", config.output_path)
        else:
            report.line(codec.render_graph(graph))
        report.extend([("n", graph.n), ("m", graph.edge_count)])
        return report

    async def closure(args) -> Report:
        config = run_config(args)
        graph = await codec.read_graph(config.input_path)
        result = closure_service.transitive_closure(graph)
        report = Report("closure")
        report.line(f"transitive closure of {config.input_path}: {graph.edge_count} -> {result.edge_count} edges")
        if config.output_path:
            await codec.write_graph(config.output_path, result, [f"closure of {config.input_path}"])
            report.field("out", config.output_path)
        else:
            report.line(codec.render_graph(result))
        report.extend([("n", graph.n), ("m", graph.edge_count), ("closure_m", result.edge_count)])
        return report

    async def find_pattern(args) -> Report:
        config = run_config(args)
        graph = await codec.read_graph(config.input_path)
        pattern = parse_pattern_name(args.pattern)
        embedding = pattern_service.find_induced(graph, pattern)
        report = Report("find-pattern")
        report.field("pattern", pattern.name)
        report.field("found", embedding is not None)
        if embedding is not None:
            report.line(f"induced copy of {pattern.name} at {list(embedding.mapping)}")
            report.field("mapping", list(embedding.mapping))
            report.check("verified", embedding.verifies(graph, pattern))
        else:
            report.line(f"no induced copy of {pattern.name}")
        return report

    parser = subparsers.add_parser("gen-random", help="graphe aléatoire G(n, p)")
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--p", type=float, required=True)
    add_seed(parser)
    add_output(parser)
    parser.set_defaults(handler=gen_random, command_name="gen-random")

    parser = subparsers.add_parser("closure", help="fermeture transitive ordonnée")
    add_input(parser)
    add_output(parser)
    parser.set_defaults(handler=closure, command_name="closure")

    parser = subparsers.add_parser("find-pattern", help="recherche d'un motif induit")
    add_input(parser)
    parser.add_argument("--pattern", required=True, help="mp:k, S ou P")
    parser.set_defaults(handler=find_pattern, command_name="find-pattern")
