# orl/presentation/cli/commands/construction.py
"""
Commandes construct et expander {gen, certify, power, pair-bound}
"""
from orl.domain.construction import BlockStructure, BlowupParams, CertificationMode
from orl.domain.embedding import as_fraction
from orl.domain.errors import ParameterError
from orl.infrastructure.random_streams import RandomStreams
from orl.presentation.cli.options import add_input, add_output, add_seed, run_config
from orl.presentation.cli.report import Report


def blowup_params(args) -> BlowupParams:
    explicit = any(v is not None for v in (args.k, args.m, args.f))
    theorem = any(v is not None for v in (args.eps, args.n))
    if explicit and theorem:
        raise ParameterError("use either --k/--m/--f or --eps/--n, not both")
    if theorem:
        if args.eps is None or args.n is None:
            raise ParameterError("theorem mode needs both --eps and --n")
        return BlowupParams.from_theorem(as_fraction(args.eps), args.n)
    if args.k is None or args.m is None or args.f is None:
        raise ParameterError("explicit mode needs --k, --m and --f")
    return BlowupParams.explicit(args.k, args.f, args.m)


def setup_construction_commands(subparsers, construction_service, codec, budget):
    """Enregistre les commandes de construction par expanseurs"""

    async def construct(args) -> Report:
        config = run_config(args)
        params = blowup_params(args)
        mode = CertificationMode(args.certify) if args.certify else None
        graph, certificate = construction_service.build_counterexample(params, config.seed, mode)

        report = Report("construct", config.seed)
        report.line(f"ordered graph on {graph.n} vertices ({params.k} blocks of {params.m}), "
                    f"{graph.edge_count} edges")
        lines = certificate.to_lines()
        values = dict(lines)
        report.extend(line for line in lines if line[0] != "passed")
        for label in ("max_degree_ok", "no_bad_triple_ok", "pattern_S_free", "pattern_P_free"):
            report.check(f"check_{label}", values[label])
        report.check("check_pair_bounds", all(r.holds for r in certificate.pair_bound_report))

        limit = budget.limit("biclique")
        if params.k >= 2 and (limit is None or graph.n <= limit):
            pigeonhole = construction_service.biclique_pigeonhole(graph, BlockStructure(params.k, params.m))
            report.extend([("biclique", pigeonhole.biclique.size),
                           ("biclique_blocks", list(pigeonhole.blocks)),
                           ("biclique_best_block_pair", pigeonhole.best_block_pair)])
            report.check("check_biclique_pigeonhole", pigeonhole.holds)

        if config.output_path:
            await codec.write_graph(config.output_path, graph,
                                    [f"construct k={params.k} f={params.f} m={params.m} seed={config.seed}"])
            report.field("out", config.output_path)
        if args.cert:
            await codec.write_certificate(args.cert, [("seed", config.seed)] + certificate.to_lines())
            report.field("cert", args.cert)
        return report

    async def expander_gen(args) -> Report:
        config = run_config(args)
        graph = construction_service.random_regular(args.m, args.d, RandomStreams(config.seed).stream("regular-graph"))
        report = Report("expander gen", config.seed)
        report.line(f"{args.d}-regular graph on {args.m} vertices")
        if config.output_path:
            await codec.write_graph(config.output_path, graph, [f"expander gen m={args.m} d={args.d} seed={config.seed}"])
            report.field("out", config.output_path)
        else:
            report.line(codec.render_graph(graph))
        report.extend([("m", args.m), ("d", args.d)])
        return report

    async def expander_certify(args) -> Report:
        config = run_config(args)
        graph = await codec.read_graph(config.input_path)
        expander = construction_service.certify_expansion(graph, CertificationMode(args.mode), config.seed)
        report = Report("expander certify", config.seed)
        report.line(f"lambda = {expander.expansion} ({float(expander.expansion):.6g}), mode {expander.mode.value}")
        if expander.witness:
            report.line(f"witness U: {list(expander.witness)}")
        report.extend([("n", expander.n), ("degree", expander.degree), ("lambda", str(expander.expansion)),
                       ("mode", expander.mode.value), ("certifying", expander.certifying)])
        return report

    async def expander_power(args) -> Report:
        config = run_config(args)
        graph = await codec.read_graph(config.input_path)
        power = construction_service.graph_power(graph, args.r)
        degree = graph.max_degree()
        report = Report("expander power")
        report.line(f"H^{args.r}: {power.edge_count} edges, max degree {power.max_degree()}")
        if config.output_path:
            await codec.write_graph(config.output_path, power, [f"power r={args.r} of {config.input_path}"])
            report.field("out", config.output_path)
        else:
            report.line(codec.render_graph(power))
        report.extend([("r", args.r), ("max_degree", power.max_degree()),
                       ("degree_bound", (degree + 1) ** args.r)])
        report.check("degree_bound_ok", power.max_degree() <= (degree + 1) ** args.r)
        return report

    async def expander_pair_bound(args) -> Report:
        config = run_config(args)
        graph = await codec.read_graph(config.input_path)
        expander = construction_service.certify_expansion(graph, CertificationMode.EXACT)
        pair = construction_service.check_pair_bound(expander, args.r)
        report = Report("expander pair-bound")
        report.line(f"max |X||Y| = {pair.max_product} with X={list(pair.witness_x)} Y={list(pair.witness_y)}")
        report.extend([("r", args.r), ("lambda", str(expander.expansion)), ("max_product", pair.max_product),
                       ("bound", f"{float(pair.bound):.6g}")])
        report.check("pair_bound_ok", pair.holds)
        return report

    parser = subparsers.add_parser("construct", help="graphe ordonné sans S ni P")
    parser.add_argument("--k", type=int, default=None)
    parser.add_argument("--m", type=int, default=None)
    parser.add_argument("--f", type=int, default=None)
    parser.add_argument("--eps", default=None, help="mode théorème : ε rationnel")
    parser.add_argument("--n", type=int, default=None, help="mode théorème : nombre de sommets")
    parser.add_argument("--certify", choices=[m.value for m in CertificationMode], default=None)
    parser.add_argument("--cert", default=None, help="fichier certificat (key: value)")
    add_seed(parser)
    add_output(parser)
    parser.set_defaults(handler=construct, command_name="construct")

    expander = subparsers.add_parser("expander", help="expanseurs réguliers")
    commands = expander.add_subparsers(dest="expander_command", required=True)

    parser = commands.add_parser("gen", help="graphe d-régulier aléatoire")
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--d", type=int, default=3)
    add_seed(parser)
    add_output(parser)
    parser.set_defaults(handler=expander_gen, command_name="expander gen")

    parser = commands.add_parser("certify", help="certification de λ")
    add_input(parser)
    parser.add_argument("--mode", choices=[m.value for m in CertificationMode], default=CertificationMode.EXACT.value)
    add_seed(parser)
    parser.set_defaults(handler=expander_certify, command_name="expander certify")

    parser = commands.add_parser("power", help="puissance H^r")
    add_input(parser)
    parser.add_argument("--r", type=int, required=True)
    add_output(parser)
    parser.set_defaults(handler=expander_power, command_name="expander power")

    parser = commands.add_parser("pair-bound", help="borne |X||Y| ≤ n²(1+λ)^-r")
    add_input(parser)
    parser.add_argument("--r", type=int, required=True)
    parser.set_defaults(handler=expander_pair_bound, command_name="expander pair-bound")
