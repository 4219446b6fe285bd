# orl/presentation/cli/commands/verify.py
"""
Sous-commandes verify : recoupement des chemins rapides avec les oracles
"""
from orl.domain.construction import BlockStructure
from orl.domain.errors import ParameterError
from orl.domain.ordered_graph import BipartiteOrderedGraph
from orl.domain.patterns import parse_pattern_name
from orl.domain.qeh import PathResult, QehConstants
from orl.presentation.cli.commands.embedding import describe_outcome
from orl.presentation.cli.commands.qeh import describe_qeh
from orl.presentation.cli.options import add_constants, add_input, add_seed, run_config
from orl.presentation.cli.report import Report

RATIO_ALARM = 0.5


def setup_verify_commands(subparsers, closure_service, pattern_service, oracle_service, embedding_service,
                          qeh_service, homogeneous_service, construction_service, codec):
    """Enregistre les sous-commandes verify"""

    async def verify_closure(args) -> Report:
        config = run_config(args)
        graph = await codec.read_graph(config.input_path)
        fast = closure_service.transitive_closure(graph)
        brute = oracle_service.brute_closure(graph)
        report = Report("verify closure")
        report.line(f"closure: dynamic programming {fast.edge_count} edges, enumeration {brute.edge_count} edges")
        report.check("closure_match", fast.rows == brute.rows)
        return report

    async def verify_pattern(args) -> Report:
        config = run_config(args)
        graph = await codec.read_graph(config.input_path)
        pattern = parse_pattern_name(args.pattern)
        fast = pattern_service.find_induced(graph, pattern)
        brute = oracle_service.brute_pattern(graph, pattern)
        report = Report("verify pattern")
        report.line(f"{pattern.name}: matcher {'found' if fast else 'absent'}, "
                    f"enumeration {'found' if brute else 'absent'}")
        report.extend([("pattern", pattern.name), ("found", fast is not None)])
        report.check("presence_match", (fast is None) == (brute is None))
        if fast is not None:
            report.check("embedding_verified", fast.verifies(graph, pattern))
            report.check("same_embedding", fast == brute)
        return report

    async def verify_embedding(args) -> Report:
        config = run_config(args)
        constants = config.embedding_constants()
        graph = await codec.read_graph(config.input_path)
        bipartite = BipartiteOrderedGraph.from_ordered_graph(graph, graph.n // 2)
        outcome = embedding_service.embed_decompose(bipartite, constants, config.seed)
        report = Report("verify embedding", config.seed)
        describe_outcome(report, outcome)
        report.check("outcome_verified", embedding_service.verify_outcome(bipartite, outcome, constants))
        return report

    async def verify_qeh(args) -> Report:
        config = run_config(args)
        consts = QehConstants(args.k, config.embedding_constants())
        graph = await codec.read_graph(config.input_path)
        result = qeh_service.qeh_decompose(graph, consts, config.seed)
        report = Report("verify qeh", config.seed)
        describe_qeh(report, result)
        report.check("result_verified", qeh_service.verify_qeh_result(graph, result, consts))
        if isinstance(result, PathResult):
            report.check("path_search_agrees", pattern_service.find_induced_monotone_path(graph, args.k) is not None)
        return report

    async def verify_homogeneous(args) -> Report:
        config = run_config(args)
        consts = QehConstants(args.k, config.embedding_constants())
        graph = await codec.read_graph(config.input_path)
        result = homogeneous_service.extract_homogeneous(graph, consts, config.seed)
        optimum, kind, _ = oracle_service.brute_max_homogeneous(graph)
        ratio = result.size / optimum if optimum else 1.0
        report = Report("verify homogeneous", config.seed)
        report.line(f"{result.kind.value} of size {result.size}; optimum {optimum} ({kind.value})")
        report.extend([("size", result.size), ("optimum", optimum), ("ratio", f"{ratio:.4f}"),
                       ("ratio_alarm", ratio < RATIO_ALARM)])
        report.check("homogeneous", homogeneous_service.is_homogeneous(graph, result.vertices, result.kind))
        report.check("within_optimum", result.size <= optimum)
        return report

    async def verify_biclique(args) -> Report:
        config = run_config(args)
        graph = await codec.read_graph(config.input_path)
        report = Report("verify biclique")
        if args.blocks is None:
            witness = construction_service.find_balanced_biclique_complement(graph)
            report.line(f"largest balanced bi-clique in the complement: {witness.size}")
            report.extend([("biclique", witness.size), ("left", list(witness.left)), ("right", list(witness.right))])
            return report
        if args.blocks < 1 or graph.n % args.blocks:
            raise ParameterError(f"{graph.n} vertices do not split into {args.blocks} equal blocks")
        pigeonhole = construction_service.biclique_pigeonhole(graph, BlockStructure(args.blocks, graph.n // args.blocks))
        report.line(f"largest balanced bi-clique in the complement: {pigeonhole.biclique.size}")
        report.extend([("biclique", pigeonhole.biclique.size), ("blocks", list(pigeonhole.blocks)),
                       ("part_sizes", list(pigeonhole.part_sizes)),
                       ("best_block_pair", pigeonhole.best_block_pair)])
        report.check("pigeonhole", pigeonhole.holds)
        return report

    verify = subparsers.add_parser("verify", help="recoupement avec les oracles")
    commands = verify.add_subparsers(dest="verify_command", required=True)

    parser = commands.add_parser("closure")
    add_input(parser)
    parser.set_defaults(handler=verify_closure, command_name="verify closure")

    parser = commands.add_parser("pattern")
    add_input(parser)
    parser.add_argument("--pattern", required=True)
    parser.set_defaults(handler=verify_pattern, command_name="verify pattern")

    parser = commands.add_parser("embedding")
    add_input(parser)
    add_constants(parser)
    add_seed(parser)
    parser.set_defaults(handler=verify_embedding, command_name="verify embedding")

    for name, handler in (("qeh", verify_qeh), ("homogeneous", verify_homogeneous)):
        parser = commands.add_parser(name)
        add_input(parser)
        parser.add_argument("--k", type=int, required=True)
        add_constants(parser)
        add_seed(parser)
        parser.set_defaults(handler=handler, command_name=f"verify {name}")

    parser = commands.add_parser("biclique")
    add_input(parser)
    parser.add_argument("--blocks", type=int, default=None, help="nombre de blocs consécutifs égaux")
    parser.set_defaults(handler=verify_biclique, command_name="verify biclique")
