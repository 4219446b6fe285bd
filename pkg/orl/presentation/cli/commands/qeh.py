# orl/presentation/cli/commands/qeh.py
"""
Commandes qeh et homogeneous
"""
from orl.domain.qeh import FamilyResult, PathResult, QehConstants, QehResult
from orl.presentation.cli.options import add_constants, add_input, add_seed, run_config
from orl.presentation.cli.report import Report

ORACLE_RATIO_MAX_N = 24


def describe_qeh(report: Report, result: QehResult) -> None:
    report.field("result", result.kind)
    if isinstance(result, PathResult):
        report.line(f"induced monotone path {list(result.vertices)}")
        report.field("path", list(result.vertices))
    elif isinstance(result, FamilyResult):
        report.line(f"family of t={result.t} pairwise non-adjacent sets")
        for i, x_set in enumerate(result.sets):
            report.line(f"X{i}: {list(x_set)}")
        report.extend([("t", result.t), ("set_sizes", [len(x) for x in result.sets])])
    for record in result.trace:
        report.line(f"step s={record.s}: |X|={record.x_size} |Y|={record.y_size} |Z|={record.z_size} "
                    f"-> {record.variant} ({record.route})")


def setup_qeh_commands(subparsers, qeh_service, homogeneous_service, pattern_service, oracle_service, codec):
    """Enregistre les commandes qeh et homogeneous"""

    async def qeh(args) -> Report:
        config = run_config(args)
        consts = QehConstants(args.k, config.embedding_constants())
        graph = await codec.read_graph(config.input_path)
        result = qeh_service.qeh_decompose(graph, consts, config.seed)

        report = Report("qeh", config.seed)
        report.extend([("k", args.k), ("profile", consts.embedding.profile.value),
                       ("eps", str(consts.eps)), ("alpha_sq", str(consts.alpha_sq)), ("n", graph.n)])
        describe_qeh(report, result)
        report.check("verified", qeh_service.verify_qeh_result(graph, result, consts))
        return report

    async def homogeneous(args) -> Report:
        config = run_config(args)
        consts = QehConstants(args.k, config.embedding_constants())
        graph = await codec.read_graph(config.input_path)
        result = homogeneous_service.extract_homogeneous(graph, consts, config.seed, args.base_size)

        report = Report("homogeneous", config.seed)
        report.line(f"{result.kind.value} of size {result.size}: {list(result.vertices)}")
        for note in result.diagnostics:
            report.line(f"diagnostic: {note}")
        report.extend([("k", args.k), ("n", graph.n), ("kind", result.kind.value), ("size", result.size),
                       ("vertices", list(result.vertices))])
        report.check("verified", homogeneous_service.is_homogeneous(graph, result.vertices, result.kind))
        if graph.n <= ORACLE_RATIO_MAX_N:
            optimum, _, _ = oracle_service.brute_max_homogeneous(graph)
            report.field("family_member", pattern_service.is_family_member(graph, max(args.k, 2)))
            report.field("oracle_optimum", optimum)
            report.field("oracle_ratio", f"{result.size / optimum:.4f}" if optimum else "1.0000")
        return report

    parser = subparsers.add_parser("qeh", help="décomposition quasi-Erdős–Hajnal")
    add_input(parser)
    parser.add_argument("--k", type=int, required=True, help="taille du chemin monotone")
    add_constants(parser)
    add_seed(parser)
    parser.set_defaults(handler=qeh, command_name="qeh")

    parser = subparsers.add_parser("homogeneous", help="extraction d'un ensemble homogène")
    add_input(parser)
    parser.add_argument("--k", type=int, required=True, help="taille du chemin monotone")
    parser.add_argument("--base-size", type=int, default=None, help="taille des cas de base exhaustifs")
    add_constants(parser)
    add_seed(parser)
    parser.set_defaults(handler=homogeneous, command_name="homogeneous")
