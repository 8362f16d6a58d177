#include "ramsey/cli.hpp"

#include "ramsey/amalgamation.hpp"
#include "ramsey/arrow.hpp"
#include "ramsey/class_dsl.hpp"
#include "ramsey/embedding.hpp"
#include "ramsey/error.hpp"
#include "ramsey/formula.hpp"
#include "ramsey/product.hpp"
#include "ramsey/text_format.hpp"

#include <CLI11.hpp>

#include <functional>
#include <sstream>

namespace ramsey::cli {

namespace {

/// An error already tagged with its exit status and the flag it concerns.
struct Failure
{
    int status;
    std::string message;
};

enum class Format { text, tsv };

struct Options
{
    Format format = Format::text;
    unsigned threads = 1;

    std::string a, b, c, b1, b2, e1, e2;
    std::string in, left, right, f, m, hom;
    std::string class_spec, mode = "check-sap", phi, name;
    std::string sigma, tau;
    std::size_t colours = 2;
    std::size_t size = 0;
    std::size_t max_size = 3;
    bool canonical_certificate = false;
    bool diagonal = false;
};

std::string join(const std::vector<std::string> & parts, const std::string & sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? sep : "") + parts[i];
    return out;
}

std::string image_list(std::span<const Element> map)
{
    std::vector<std::string> parts;
    for (auto x : map)
        parts.push_back(std::to_string(x));
    return join(parts, " ");
}

// Map lines as comments, so that the surrounding output still parses as a
// structure.
void comment_map(std::ostream & out, const std::string & label, std::span<const Element> map)
{
    out << "# " << label << ":";
    for (std::size_t i = 0; i < map.size(); ++i)
        out << (i ? ", " : " ") << i << " -> " << map[i];
    out << '\n';
}

Structure load_structure(const std::string & flag, const std::string & path)
{
    try {
        return read_structure_file(path);
    } catch (const FormatError & e) {
        throw Failure{format_error, flag + ": " + e.what()};
    } catch (const PreconditionError & e) {
        throw Failure{format_error, flag + ": " + path + ": " + e.what()};
    }
}

std::vector<Element> load_map(const std::string & flag, const std::string & path, std::size_t source_size)
{
    try {
        return read_map_file(path, source_size);
    } catch (const FormatError & e) {
        throw Failure{format_error, flag + ": " + e.what()};
    }
}

ClassSpec load_class(const std::string & text)
{
    try {
        return parse_class_spec(text);
    } catch (const SyntaxError & e) {
        throw Failure{usage_error, std::string("--class: ") + e.what()};
    } catch (const PreconditionError & e) {
        throw Failure{precondition_error, std::string("--class: ") + e.what()};
    }
}

std::set<std::string> symbol_list(const std::string & flag, const std::string & text)
{
    std::set<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw Failure{usage_error, flag + ": empty symbol name in '" + text + "'"};
        out.insert(item.substr(first, last - first + 1));
    }
    return out;
}

void require_member(const ClassSpec & spec, const Structure & s, const std::string & flag)
{
    bool member = false;
    try {
        member = is_member(spec, s);
    } catch (const PreconditionError & e) {
        throw Failure{precondition_error, flag + ": " + e.what()};
    }
    if (!member)
        throw Failure{precondition_error, flag + ": not a member of " + spec.describe()};
}

void print_diagram(std::ostream & out, const AmalgamationDiagram & d)
{
    out << "# base\n" << render_structure(d.base) << "---\n";
    out << "# first\n";
    comment_map(out, "base -> first", d.into_first.map());
    out << render_structure(d.first) << "---\n";
    out << "# second\n";
    comment_map(out, "base -> second", d.into_second.map());
    out << render_structure(d.second);
}

void print_amalgam(std::ostream & out, const Amalgam & m)
{
    comment_map(out, "first -> amalgam", m.from_first.map());
    comment_map(out, "second -> amalgam", m.from_second.map());
    out << render_structure(m.structure);
}

int cmd_arrow(const Options & o, std::ostream & out)
{
    auto inst = make_arrow_instance(load_structure("--A", o.a), load_structure("--B", o.b),
                                    load_structure("--C", o.c), o.colours);
    auto cert = check_arrow(inst, {o.canonical_certificate});
    if (o.format == Format::tsv) {
        out << "verdict\tcolours\tembeddings\tcertificate\n";
        std::vector<std::string> colours;
        for (auto x : cert.colouring)
            colours.push_back(std::to_string(x));
        out << verdict_name(cert.verdict) << '\t' << o.colours << '\t' << count_embeddings(inst.a, inst.c) << '\t'
            << join(colours, ",") << '\n';
        return ok;
    }
    out << verdict_name(cert.verdict) << '\n';
    for (std::size_t i = 0; i < cert.colouring.size(); ++i)
        out << "emb#" << i << " -> " << cert.colouring[i] << '\n';
    return ok;
}

int cmd_witness(const Options & o, std::ostream & out)
{
    auto spec = load_class(o.class_spec);
    auto a = load_structure("--A", o.a);
    auto b = load_structure("--B", o.b);
    require_member(spec, a, "--A");
    require_member(spec, b, "--B");
    if (o.max_size < b.size())
        throw Failure{usage_error, "--max-size: must be at least |B| = " + std::to_string(b.size())};
    auto found = search_witness(spec, a, b, o.colours, o.max_size, o.threads);
    if (o.format == Format::tsv) {
        out << "result\tsize\tmax_size\n";
        out << (found ? "WITNESS" : "NO-WITNESS") << '\t' << (found ? std::to_string(found->size()) : "-") << '\t'
            << o.max_size << '\n';
        return ok;
    }
    if (!found) {
        out << "NO-WITNESS up to size " << o.max_size << '\n';
        return ok;
    }
    out << "# WITNESS of size " << found->size() << '\n' << render_structure(*found);
    return ok;
}

int cmd_amalgam(const Options & o, std::ostream & out)
{
    auto spec = load_class(o.class_spec);
    if (o.mode == "check-ap" || o.mode == "check-sap" || o.mode == "check-jep") {
        auto property = o.mode == "check-ap"    ? AmalgamationProperty::amalgamation
                        : o.mode == "check-sap" ? AmalgamationProperty::strong_amalgamation
                                                : AmalgamationProperty::joint_embedding;
        auto result = check_property(spec, property, o.max_size, o.threads);
        auto name = property_name(property);
        if (o.format == Format::tsv) {
            out << "property\tresult\tbound\tdiagrams\n";
            out << name << '\t' << (result.ok() ? "verified" : "fails") << '\t' << result.bound << '\t'
                << result.diagrams_checked << '\n';
            return ok;
        }
        if (result.ok()) {
            out << name << " verified up to size " << result.bound << '\n';
        } else {
            out << name << " fails up to size " << result.bound << '\n';
            print_diagram(out, *result.counterexample);
        }
        return ok;
    }

    if (o.a.empty() || o.b1.empty() || o.b2.empty() || o.e1.empty() || o.e2.empty())
        throw Failure{usage_error, "--mode " + o.mode + ": requires --A, --B1, --B2, --e1 and --e2"};
    auto base = load_structure("--A", o.a);
    auto first = load_structure("--B1", o.b1);
    auto second = load_structure("--B2", o.b2);
    auto e1 = load_map("--e1", o.e1, base.size());
    auto e2 = load_map("--e2", o.e2, base.size());
    AmalgamationDiagram d;
    try {
        d = make_diagram(base, first, second, Embedding(e1), Embedding(e2));
    } catch (const PreconditionError & e) {
        throw Failure{precondition_error, std::string("--e1/--e2: ") + e.what()};
    }

    std::vector<Amalgam> amalgams;
    if (o.mode == "free") {
        amalgams.push_back(free_amalgam(d));
    } else {
        require_member(spec, first, "--B1");
        require_member(spec, second, "--B2");
        amalgams = find_strong_amalgams(d, spec);
    }
    if (o.format == Format::tsv) {
        out << "mode\tamalgams\tsize\n";
        out << o.mode << '\t' << amalgams.size() << '\t'
            << (amalgams.empty() ? std::string("-") : std::to_string(amalgams.front().structure.size())) << '\n';
        return ok;
    }
    if (amalgams.empty()) {
        out << "# no strong amalgam in " << spec.describe() << '\n';
        return ok;
    }
    out << "# " << amalgams.size() << (amalgams.size() == 1 ? " amalgam\n" : " amalgams\n");
    for (std::size_t i = 0; i < amalgams.size(); ++i) {
        if (i)
            out << "---\n";
        print_amalgam(out, amalgams[i]);
    }
    return ok;
}

int cmd_check_class(const Options & o, std::ostream & out)
{
    auto spec = load_class(o.class_spec);
    auto s = load_structure("--in", o.in);
    bool member = false;
    try {
        member = is_member(spec, s);
    } catch (const PreconditionError & e) {
        throw Failure{precondition_error, std::string("--in: ") + e.what()};
    }
    if (o.format == Format::tsv)
        out << "class\tresult\n" << spec.describe() << '\t' << (member ? "MEMBER" : "NOT-MEMBER") << '\n';
    else
        out << (member ? "MEMBER" : "NOT-MEMBER") << '\n';
    return ok;
}

int cmd_enumerate(const Options & o, std::ostream & out)
{
    auto spec = load_class(o.class_spec);
    auto members = enumerate_members(spec, o.size);
    if (o.format == Format::tsv) {
        out << "class\tsize\tcount\n" << spec.describe() << '\t' << o.size << '\t' << members.size() << '\n';
        return ok;
    }
    out << "# " << members.size() << " members of " << spec.describe() << " of size " << o.size << '\n';
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i)
            out << "---\n";
        out << render_structure(members[i]);
    }
    return ok;
}

int cmd_product(const Options & o, std::ostream & out)
{
    auto left = load_structure("--left", o.left);
    if (o.diagonal) {
        if (o.sigma.empty() || o.tau.empty())
            throw Failure{usage_error, "--diagonal-check: requires --sigma and --tau"};
        bool holds = false;
        try {
            holds = diagonal_check(left, symbol_list("--sigma", o.sigma), symbol_list("--tau", o.tau));
        } catch (const PreconditionError & e) {
            throw Failure{precondition_error, std::string("--sigma/--tau: ") + e.what()};
        }
        if (o.format == Format::tsv)
            out << "check\tresult\n" << "diagonal\t" << (holds ? "ok" : "fails") << '\n';
        else
            out << (holds ? "DIAGONAL-OK" : "DIAGONAL-FAILS") << '\n';
        return ok;
    }
    if (o.right.empty())
        throw Failure{usage_error, "--right: required unless --diagonal-check is given"};
    auto right = load_structure("--right", o.right);
    Structure product = [&] {
        try {
            return full_product(left, right);
        } catch (const PreconditionError & e) {
            throw Failure{precondition_error, std::string("--left/--right: ") + e.what()};
        }
    }();
    if (o.format == Format::tsv) {
        out << "size\tsignature\n" << product.size() << '\t' << product.signature().to_string() << '\n';
        return ok;
    }
    out << "# domain:";
    for (Element i = 0; i < product.size(); ++i) {
        auto [a, b] = product_pair(i, right.size());
        out << (i ? ", " : " ") << i << " = (" << a << "," << b << ")";
    }
    out << '\n' << render_structure(product);
    return ok;
}

int cmd_injectivize(const Options & o, std::ostream & out)
{
    auto spec = load_class(o.class_spec);
    auto source = load_structure("--F", o.f);
    auto target = load_structure("--M", o.m);
    auto map = load_map("--hom", o.hom, source.size());
    Injectivization result;
    try {
        result = injectivize(map, source, target, spec);
    } catch (const AmalgamationFailure & e) {
        std::ostringstream diagram;
        print_diagram(diagram, e.diagram());
        throw Failure{precondition_error, std::string("injectivize: ") + e.what() + "\n" + diagram.str()};
    } catch (const PreconditionError & e) {
        throw Failure{precondition_error, std::string("--F/--M/--hom: ") + e.what()};
    }
    if (o.format == Format::tsv) {
        out << "steps\tsize\tmapping\n"
            << result.steps << '\t' << result.target.size() << '\t' << image_list(result.mapping) << '\n';
        return ok;
    }
    out << "# steps: " << result.steps << '\n';
    comment_map(out, "injective homomorphism", result.mapping);
    out << render_structure(result.target);
    return ok;
}

int cmd_transfer(const Options & o, std::ostream & out)
{
    auto a = load_structure("--A", o.a);
    auto b = load_structure("--B", o.b);
    auto c = load_structure("--C", o.c);
    Formula phi = [&] {
        try {
            return parse_formula(o.phi, a.signature());
        } catch (const SyntaxError & e) {
            throw Failure{usage_error, std::string("--phi: ") + e.what()};
        }
    }();
    TransferReport report;
    try {
        report = transfer_check(a, b, c, phi, o.name, o.colours);
    } catch (const PreconditionError & e) {
        throw Failure{precondition_error, std::string("--phi/--name: ") + e.what()};
    }
    const char * equal = report.embeddings_equal ? "equal" : "different";
    if (o.format == Format::tsv) {
        out << "plain\texpanded\tagree\tembeddings\n"
            << verdict_name(report.plain) << '\t' << verdict_name(report.expanded) << '\t'
            << (report.agree() ? "yes" : "no") << '\t' << equal << '\n';
        return ok;
    }
    out << "plain: " << verdict_name(report.plain) << '\n';
    out << "expanded: " << verdict_name(report.expanded) << '\n';
    out << "verdicts " << (report.agree() ? "agree" : "differ") << '\n';
    out << "embeddings: " << report.plain_embeddings << " plain, " << report.expanded_embeddings << " expanded, "
        << equal << '\n';
    return ok;
}

int cmd_embeddings(const Options & o, std::ostream & out)
{
    auto a = load_structure("--A", o.a);
    auto c = load_structure("--C", o.c);
    std::vector<Embedding> all;
    try {
        all = enumerate_embeddings(a, c);
    } catch (const PreconditionError & e) {
        throw Failure{precondition_error, std::string("--A/--C: ") + e.what()};
    }
    if (o.format == Format::tsv)
        out << "index\timage\n";
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (o.format == Format::tsv)
            out << i << '\t' << image_list(all[i].map()) << '\n';
        else
            out << "emb#" << i << ": " << image_list(all[i].map()) << '\n';
    }
    return ok;
}

} // namespace

int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
    Options o;
    CLI::App app{"Finite structural Ramsey theory: arrows, amalgams, products", "ramsey"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", o.threads, "Worker threads for amalgamation checks and witness search")
        ->check(CLI::Range(1u, 256u));
    app.add_option("--format", o.format, "Output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::text}, {"tsv", Format::tsv}}));

    std::function<int(const Options &, std::ostream &)> command;
    auto sub = [&](const char * name, const char * help, int (*fn)(const Options &, std::ostream &)) {
        auto * s = app.add_subcommand(name, help);
        s->callback([&command, fn] { command = fn; });
        return s;
    };
    auto file = [](CLI::App * s, const char * flag, std::string & target, const char * help) {
        return s->add_option(flag, target, help)->required();
    };

    auto * arrow = sub("arrow", "Decide C -> (B)^A_r", cmd_arrow);
    file(arrow, "--A", o.a, "Structure file for A");
    file(arrow, "--B", o.b, "Structure file for B");
    file(arrow, "--C", o.c, "Structure file for C");
    arrow->add_option("-r", o.colours, "Number of colours")->required()->check(CLI::Range(1, 64));
    arrow->add_flag("--canonical-certificate", o.canonical_certificate,
                    "Report the lexicographically least bad colouring");

    auto * witness = sub("witness", "Smallest member C of a class with C -> (B)^A_r", cmd_witness);
    witness->add_option("--class", o.class_spec, "Class spec")->required();
    file(witness, "--A", o.a, "Structure file for A");
    file(witness, "--B", o.b, "Structure file for B");
    witness->add_option("-r", o.colours, "Number of colours")->required()->check(CLI::Range(1, 64));
    witness->add_option("--max-size", o.max_size, "Largest candidate size")->required();

    auto * amalgam = sub("amalgam", "Amalgams of one diagram, or bounded AP/SAP/JEP checks", cmd_amalgam);
    amalgam->add_option("--class", o.class_spec, "Class spec")->required();
    amalgam->add_option("--mode", o.mode, "Mode")
        ->check(CLI::IsMember({"free", "strong", "check-ap", "check-sap", "check-jep"}))
        ->required();
    amalgam->add_option("--max-size", o.max_size, "Size bound for the checks")->check(CLI::Range(0, 8));
    amalgam->add_option("--A", o.a, "Diagram base structure");
    amalgam->add_option("--B1", o.b1, "Diagram first structure");
    amalgam->add_option("--B2", o.b2, "Diagram second structure");
    amalgam->add_option("--e1", o.e1, "Map file for the base into B1");
    amalgam->add_option("--e2", o.e2, "Map file for the base into B2");

    auto * check = sub("check-class", "Membership test", cmd_check_class);
    check->add_option("--class", o.class_spec, "Class spec")->required();
    file(check, "--in", o.in, "Structure file");

    auto * enumerate = sub("enumerate", "Members of a given size up to isomorphism", cmd_enumerate);
    enumerate->add_option("--class", o.class_spec, "Class spec")->required();
    enumerate->add_option("--size", o.size, "Domain size")->required()->check(CLI::Range(0, 12));

    auto * product = sub("product", "Full product, or the diagonal check on --left", cmd_product);
    file(product, "--left", o.left, "Left factor (or the structure for --diagonal-check)");
    product->add_option("--right", o.right, "Right factor");
    product->add_flag("--diagonal-check", o.diagonal, "Compare --left with the diagonal of its split product");
    product->add_option("--sigma", o.sigma, "Comma-separated left symbols");
    product->add_option("--tau", o.tau, "Comma-separated right symbols");

    auto * inj = sub("injectivize", "Make a homomorphism injective by enlarging the target", cmd_injectivize);
    inj->add_option("--class", o.class_spec, "Class spec")->required();
    file(inj, "--F", o.f, "Source structure");
    file(inj, "--M", o.m, "Target structure");
    file(inj, "--hom", o.hom, "Map file of the homomorphism");

    auto * transfer = sub("transfer", "Compare an arrow with its definable-order expansion", cmd_transfer);
    file(transfer, "--A", o.a, "Structure file for A");
    file(transfer, "--B", o.b, "Structure file for B");
    file(transfer, "--C", o.c, "Structure file for C");
    transfer->add_option("--phi", o.phi, "Formula in x, y defining the order")->required();
    transfer->add_option("--name", o.name, "Fresh symbol for the order")->required();
    transfer->add_option("-r", o.colours, "Number of colours")->required()->check(CLI::Range(1, 64));

    auto * embeddings = sub("embeddings", "List Emb(A,C) in index order", cmd_embeddings);
    file(embeddings, "--A", o.a, "Structure file for A");
    file(embeddings, "--C", o.c, "Structure file for C");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        return command(o, out);
    } catch (const Failure & f) {
        err << "error: " << f.message << '\n';
        return f.status;
    } catch (const FormatError & e) {
        err << "error: " << e.what() << '\n';
        return format_error;
    } catch (const SyntaxError & e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const PreconditionError & e) {
        err << "error: " << e.what() << '\n';
        return precondition_error;
    }
}

} // namespace ramsey::cli
