# orl/presentation/cli/commands/embedding.py
"""
Commande embed : décomposition d'un graphe biparti ordonné lu en OGF
(classe A = premiers sommets, classe B = les suivants)
"""
from orl.domain.embedding import DenseVertex, EmbeddingOutcome, SeparatedFamilies, SparsePair
from orl.domain.ordered_graph import BipartiteOrderedGraph
from orl.presentation.cli.options import add_constants, add_input, add_seed, run_config
from orl.presentation.cli.report import Report


def describe_outcome(report: Report, outcome: EmbeddingOutcome) -> None:
    report.field("outcome", outcome.kind.value)
    report.field("route", outcome.route.value)
    if isinstance(outcome, DenseVertex):
        report.line(f"dense vertex {outcome.vertex} of degree {outcome.degree}")
        report.extend([("vertex", outcome.vertex), ("degree", outcome.degree)])
    elif isinstance(outcome, SparsePair):
        report.line(f"sparse pair |X1|={len(outcome.a_side)} |X2|={len(outcome.b_side)}")
        report.line(f"X1: {list(outcome.a_side)}")
        report.line(f"X2: {list(outcome.b_side)}")
        report.extend([("x1_size", len(outcome.a_side)), ("x2_size", len(outcome.b_side))])
    elif isinstance(outcome, SeparatedFamilies):
        report.line(f"separated families t={outcome.t}")
        for i, (w_set, x_set) in enumerate(zip(outcome.w_sets, outcome.x_sets)):
            report.line(f"W{i}: {list(w_set)}  X{i}: {list(x_set)}")
        report.extend([("t", outcome.t), ("x_sizes", [len(x) for x in outcome.x_sets])])


def setup_embedding_commands(subparsers, embedding_service, codec):
    """Enregistre la commande embed"""

    async def embed(args) -> Report:
        config = run_config(args)
        constants = config.embedding_constants()
        graph = await codec.read_graph(config.input_path)
        split = args.split if args.split is not None else graph.n // 2
        bipartite = BipartiteOrderedGraph.from_ordered_graph(graph, split)
        outcome, trace = embedding_service.decompose_with_trace(bipartite, constants, config.seed)

        report = Report("embed", config.seed)
        report.extend([("profile", constants.profile.value), ("eps1", str(constants.eps1)),
                       ("alpha1", str(constants.alpha1)), ("n", bipartite.n_a)])
        describe_outcome(report, outcome)
        if trace is not None:
            report.extend([("trimmed_n", trace.trimmed_n), ("main_steps", trace.main_steps),
                           ("sub_rounds", trace.sub_rounds), ("derandomized", trace.derandomized)])
            if trace.closing_threshold is not None:
                report.extend([("closing_threshold", str(trace.closing_threshold)),
                               ("target_threshold", str(trace.target_threshold))])
        report.check("verified", embedding_service.verify_outcome(bipartite, outcome, constants))
        return report

    parser = subparsers.add_parser("embed", help="plongement biparti : sommet dense, paire creuse ou familles séparées")
    add_input(parser)
    parser.add_argument("--split", type=int, default=None, help="taille de la classe A (défaut n/2)")
    add_constants(parser)
    add_seed(parser)
    parser.set_defaults(handler=embed, command_name="embed")
