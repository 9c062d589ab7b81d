#pragma once
// SRS document model built from the same chunks that feed code generation,
// rendered to Markdown and HTML.

#include <sstream>
#include <variant>

#include "coherence.hpp"

namespace kweave {

struct InlineRun {
    enum class Kind { Plain, Emph, Strong };  // Emph: named ideas; Strong: concept chunks
    Kind kind = Kind::Plain;
    std::string text;
    std::optional<UID> ref;
};

using RichText = std::vector<InlineRun>;

inline RichText plainText(std::string text) { return {{InlineRun::Kind::Plain, std::move(text), std::nullopt}}; }

struct Paragraph {
    RichText text;
};

struct DocTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct MathBlock {
    Expr expr;
    std::map<UID, std::string> symbols;
};

struct DefinitionCard {
    std::string refUid;
    std::string label;
    std::string symbol;
    std::string units;
    Expr equation;
    std::map<UID, std::string> symbols;
    std::vector<std::string> descriptionLines;
    std::string source;
};

struct ListBlock {
    std::vector<RichText> items;
};

using Block = std::variant<Paragraph, DocTable, MathBlock, DefinitionCard, ListBlock>;

struct Section {
    std::string heading;
    std::vector<Block> blocks;
    std::vector<Section> subsections;
};

struct DocumentModel {
    std::string title;
    std::vector<Section> sections;
};

enum class DocFormat { Markdown, HTML };

// ---------------------------------------------------------------------------
// Build

namespace docdetail {

inline std::string unitText(const ChunkDB& db, const QuantityDef& q) {
    if (!q.unit) return "Unitless";
    return db.unit(*q.unit).symbol;
}

inline std::map<UID, std::string> symbolMap(const ChunkDB& db) {
    std::map<UID, std::string> out;
    for (const auto& [uid, q] : db.quantities) out[uid] = q.symbol;
    return out;
}

inline std::string sourceText(const std::vector<std::string>& keys) {
    std::string out;
    for (const auto& k : keys) {
        if (!out.empty()) out += ", ";
        out += "[" + k + "]";
    }
    return out.empty() ? "--" : out;
}

inline std::string rangeText(const std::optional<Interval>& range) {
    if (!range) return "--";
    std::ostringstream out;
    out << (range->loClosed ? "[" : "(") << range->lo << ", " << range->hi << (range->hiClosed ? "]" : ")");
    return out.str();
}

} // namespace docdetail

inline DocumentModel buildSRS(const SystemSpec& spec) {
    const ChunkDB& db = spec.db;
    auto symbols = docdetail::symbolMap(db);
    auto used = usedSymbols(spec);

    DocumentModel doc;
    doc.title = "Software Requirements Specification for " + spec.programName;

    // Reference Material
    {
        Section ref;
        ref.heading = "Reference Material";

        Section unitsSec;
        unitsSec.heading = "Table of Units";
        DocTable unitTable;
        unitTable.header = {"Symbol", "Name", "Dimension"};
        std::set<UID> referencedUnits;
        for (const auto& uid : used) {
            const QuantityDef& q = db.quantity(uid);
            if (q.unit) referencedUnits.insert(*q.unit);
        }
        for (const auto& u : referencedUnits) {
            const UnitDef& unit = db.unit(u);
            unitTable.rows.push_back({unit.symbol, unit.name, toString(unit.dimension)});
        }
        unitsSec.blocks.push_back(unitTable);
        ref.subsections.push_back(std::move(unitsSec));

        Section symSec;
        symSec.heading = "Table of Symbols";
        symSec.blocks.push_back(Paragraph{plainText("The table lists the symbols actually used, alphabetized "
                                                    "by symbol.")});
        DocTable symTable;
        symTable.header = {"Symbol", "Description", "Units"};
        std::vector<UID> sorted(used.begin(), used.end());
        std::sort(sorted.begin(), sorted.end(), [&](const UID& a, const UID& b) {
            return db.quantity(a).symbol < db.quantity(b).symbol;
        });
        for (const auto& uid : sorted) {
            const QuantityDef& q = db.quantity(uid);
            symTable.rows.push_back({q.symbol, q.description, docdetail::unitText(db, q)});
        }
        symSec.blocks.push_back(symTable);
        ref.subsections.push_back(std::move(symSec));
        doc.sections.push_back(std::move(ref));
    }

    // Introduction
    {
        Section intro;
        intro.heading = "Introduction";
        intro.blocks.push_back(Paragraph{plainText(spec.programName + " addresses the following goal.")});
        intro.blocks.push_back(Paragraph{plainText(spec.goal)});
        if (!spec.authors.empty()) {
            std::string authors;
            for (const auto& a : spec.authors) {
                if (!authors.empty()) authors += ", ";
                authors += a;
            }
            intro.blocks.push_back(Paragraph{plainText("Authors: " + authors + ".")});
        }
        doc.sections.push_back(std::move(intro));
    }

    // Specific System Description
    {
        Section ssd;
        ssd.heading = "Specific System Description";

        Section assumptions;
        assumptions.heading = "Assumptions";
        if (spec.assumptions.empty()) {
            assumptions.blocks.push_back(Paragraph{plainText("None.")});
        } else {
            ListBlock list;
            for (const auto& uid : spec.assumptions) {
                const Assumption& a = db.assumptions.at(uid);
                list.items.push_back(plainText(uid + ": " + a.statement));
            }
            assumptions.blocks.push_back(list);
        }
        ssd.subsections.push_back(std::move(assumptions));

        Section tms;
        tms.heading = "Theory Models";
        for (const auto& uid : spec.tms) {
            const TheoryModel& tm = db.theoryModels.at(uid);
            tms.blocks.push_back(Paragraph{plainText(uid + " (" + tm.label + "): " + tm.description)});
            tms.blocks.push_back(MathBlock{tm.relation, symbols});
        }
        if (spec.tms.empty()) tms.blocks.push_back(Paragraph{plainText("None.")});
        ssd.subsections.push_back(std::move(tms));

        Section dds;
        dds.heading = "Data Definitions";
        for (const auto& uid : spec.dds) {
            const DataDefinition& dd = db.dataDefs.at(uid);
            const QuantityDef& q = db.quantity(dd.defines);
            DefinitionCard card;
            card.refUid = uid;
            card.label = dd.description;
            card.symbol = q.symbol;
            card.units = docdetail::unitText(db, q);
            card.equation = eq(var(dd.defines), dd.expr);
            card.symbols = symbols;
            card.descriptionLines.push_back(q.symbol + " is the " + q.description + " (" +
                                            docdetail::unitText(db, q) + ")");
            for (const auto& v : freeVars(dd.expr)) {
                const QuantityDef& dep = db.quantity(v);
                card.descriptionLines.push_back(dep.symbol + " is the " + dep.description + " (" +
                                                docdetail::unitText(db, dep) + ")");
            }
            card.source = docdetail::sourceText(dd.sources);
            dds.blocks.push_back(MathBlock{card.equation, symbols});
            dds.blocks.push_back(card);
        }
        if (spec.dds.empty()) dds.blocks.push_back(Paragraph{plainText("None.")});
        ssd.subsections.push_back(std::move(dds));

        Section ims;
        ims.heading = "Instance Models";
        for (const auto& uid : spec.ims) {
            const InstanceModel& im = db.instanceModels.at(uid);
            std::string note = uid + ": " + im.description;
            if (im.grounds) note += " Grounds " + *im.grounds + ".";
            ims.blocks.push_back(Paragraph{plainText(note)});
            ims.blocks.push_back(MathBlock{eq(var(im.output), im.expr), symbols});
        }
        if (spec.ims.empty()) ims.blocks.push_back(Paragraph{plainText("None.")});
        ssd.subsections.push_back(std::move(ims));

        Section constraints;
        constraints.heading = "Data Constraints";
        DocTable ctable;
        ctable.header = {"Symbol", "Physical Constraints", "Software Constraints"};
        for (const auto& uid : usedSymbols(spec)) {
            const QuantityDef& q = db.quantity(uid);
            if (!q.physRange && !q.sfwrRange) continue;
            ctable.rows.push_back(
                {q.symbol, docdetail::rangeText(q.physRange), docdetail::rangeText(q.sfwrRange)});
        }
        std::sort(ctable.rows.begin(), ctable.rows.end());
        if (ctable.rows.empty())
            constraints.blocks.push_back(Paragraph{plainText("None.")});
        else
            constraints.blocks.push_back(ctable);
        ssd.subsections.push_back(std::move(constraints));
        doc.sections.push_back(std::move(ssd));
    }

    // Requirements
    {
        Section reqs;
        reqs.heading = "Requirements";
        ListBlock list;
        list.items.push_back(plainText("R1: Read the input values from the supplied input file."));
        list.items.push_back(plainText("R2: Verify that every input satisfies its declared constraints."));
        int n = 3;
        for (const auto& chunk : solutionPath(spec)) {
            std::string what;
            if (auto it = db.dataDefs.find(chunk); it != db.dataDefs.end())
                what = db.quantity(it->second.defines).symbol;
            else
                what = db.quantity(db.instanceModels.at(chunk).output).symbol;
            list.items.push_back(plainText("R" + std::to_string(n++) + ": Calculate " + what + " (" + chunk + ")."));
        }
        list.items.push_back(plainText("R" + std::to_string(n) + ": Output every declared output value."));
        reqs.blocks.push_back(list);
        doc.sections.push_back(std::move(reqs));
    }

    // Traceability
    {
        Section trace;
        trace.heading = "Traceability";
        trace.blocks.push_back(
            Paragraph{plainText("An X in row r, column c records that c makes direct use of r.")});
        auto graph = buildDependencyGraph(spec);
        std::vector<UID> models;
        models.insert(models.end(), spec.tms.begin(), spec.tms.end());
        models.insert(models.end(), spec.ims.begin(), spec.ims.end());
        models.insert(models.end(), spec.dds.begin(), spec.dds.end());
        std::sort(models.begin(), models.end());
        DocTable matrix;
        matrix.header.push_back("");
        for (const auto& m : models) matrix.header.push_back(m);
        for (const auto& from : models) {
            std::vector<std::string> row{from};
            for (const auto& to : models) {
                bool hit = graph.hasEdge(from, to, EdgeKind::Uses) || graph.hasEdge(from, to, EdgeKind::Grounds);
                row.push_back(hit ? "X" : "");
            }
            matrix.rows.push_back(std::move(row));
        }
        trace.blocks.push_back(matrix);
        doc.sections.push_back(std::move(trace));
    }

    return doc;
}

// ---------------------------------------------------------------------------
// Render

namespace docdetail {

inline std::string htmlEscape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string richMarkdown(const RichText& text) {
    std::string out;
    for (const auto& run : text) {
        switch (run.kind) {
        case InlineRun::Kind::Plain: out += run.text; break;
        case InlineRun::Kind::Emph: out += "*" + run.text + "*"; break;
        case InlineRun::Kind::Strong: out += "**" + run.text + "**"; break;
        }
    }
    return out;
}

inline std::string richHtml(const RichText& text) {
    std::string out;
    for (const auto& run : text) {
        switch (run.kind) {
        case InlineRun::Kind::Plain: out += htmlEscape(run.text); break;
        case InlineRun::Kind::Emph: out += "<em>" + htmlEscape(run.text) + "</em>"; break;
        case InlineRun::Kind::Strong: out += "<strong>" + htmlEscape(run.text) + "</strong>"; break;
        }
    }
    return out;
}

inline SymbolResolver mapResolver(const std::map<UID, std::string>& symbols) {
    return [symbols](const std::string& uid) {
        auto it = symbols.find(uid);
        if (it == symbols.end()) throw UnknownUID(uid);
        return it->second;
    };
}

inline void renderBlockMarkdown(std::ostringstream& out, const Block& b) {
    if (const auto* p = std::get_if<Paragraph>(&b)) {
        out << richMarkdown(p->text) << "\n\n";
    } else if (const auto* t = std::get_if<DocTable>(&b)) {
        out << "|";
        for (const auto& h : t->header) out << " " << h << " |";
        out << "\n|";
        for (size_t i = 0; i < t->header.size(); ++i) out << " --- |";
        out << "\n";
        for (const auto& row : t->rows) {
            out << "|";
            for (const auto& cell : row) out << " " << cell << " |";
            out << "\n";
        }
        out << "\n";
    } else if (const auto* m = std::get_if<MathBlock>(&b)) {
        out << renderMathText(m->expr, MathStyle::MarkdownInline, mapResolver(m->symbols)) << "\n\n";
    } else if (const auto* c = std::get_if<DefinitionCard>(&b)) {
        out << "| " << c->refUid << " | |\n| --- | --- |\n";
        out << "| Label | " << c->label << " |\n";
        out << "| Symbol | " << c->symbol << " |\n";
        out << "| Units | " << c->units << " |\n";
        out << "| Equation | " << renderMathText(c->equation, MathStyle::MarkdownInline, mapResolver(c->symbols))
            << " |\n";
        out << "| Description | ";
        for (size_t i = 0; i < c->descriptionLines.size(); ++i) {
            if (i) out << "; ";
            out << c->descriptionLines[i];
        }
        out << " |\n";
        out << "| Source | " << c->source << " |\n\n";
    } else if (const auto* l = std::get_if<ListBlock>(&b)) {
        for (const auto& item : l->items) out << "- " << richMarkdown(item) << "\n";
        out << "\n";
    }
}

inline void renderSectionMarkdown(std::ostringstream& out, const Section& s, int depth) {
    out << std::string(static_cast<size_t>(depth), '#') << " " << s.heading << "\n\n";
    for (const auto& b : s.blocks) renderBlockMarkdown(out, b);
    for (const auto& sub : s.subsections) renderSectionMarkdown(out, sub, depth + 1);
}

inline void renderBlockHtml(std::ostringstream& out, const Block& b) {
    auto table = [&](const DocTable& t) {
        out << "<table>\n<tr>";
        for (const auto& h : t.header) out << "<th>" << htmlEscape(h) << "</th>";
        out << "</tr>\n";
        for (const auto& row : t.rows) {
            out << "<tr>";
            for (const auto& cell : row) out << "<td>" << htmlEscape(cell) << "</td>";
            out << "</tr>\n";
        }
        out << "</table>\n";
    };
    if (const auto* p = std::get_if<Paragraph>(&b)) {
        out << "<p>" << richHtml(p->text) << "</p>\n";
    } else if (const auto* t = std::get_if<DocTable>(&b)) {
        table(*t);
    } else if (const auto* m = std::get_if<MathBlock>(&b)) {
        out << "<p class=\"math\">"
            << htmlEscape(renderMathText(m->expr, MathStyle::Unicode, mapResolver(m->symbols))) << "</p>\n";
    } else if (const auto* c = std::get_if<DefinitionCard>(&b)) {
        DocTable t;
        t.header = {c->refUid, ""};
        std::string desc;
        for (size_t i = 0; i < c->descriptionLines.size(); ++i) {
            if (i) desc += "; ";
            desc += c->descriptionLines[i];
        }
        t.rows = {{"Label", c->label},
                  {"Symbol", c->symbol},
                  {"Units", c->units},
                  {"Equation", renderMathText(c->equation, MathStyle::Unicode, mapResolver(c->symbols))},
                  {"Description", desc},
                  {"Source", c->source}};
        table(t);
    } else if (const auto* l = std::get_if<ListBlock>(&b)) {
        out << "<ul>\n";
        for (const auto& item : l->items) out << "<li>" << richHtml(item) << "</li>\n";
        out << "</ul>\n";
    }
}

inline void renderSectionHtml(std::ostringstream& out, const Section& s, int depth) {
    int level = depth > 6 ? 6 : depth;
    out << "<h" << level << ">" << htmlEscape(s.heading) << "</h" << level << ">\n";
    for (const auto& b : s.blocks) renderBlockHtml(out, b);
    for (const auto& sub : s.subsections) renderSectionHtml(out, sub, depth + 1);
}

} // namespace docdetail

inline std::string renderDocument(const DocumentModel& doc, DocFormat fmt) {
    std::ostringstream out;
    if (fmt == DocFormat::Markdown) {
        out << "# " << doc.title << "\n\n";
        for (const auto& s : doc.sections) docdetail::renderSectionMarkdown(out, s, 2);
    } else {
        out << "<html>\n<head><title>" << docdetail::htmlEscape(doc.title) << "</title></head>\n<body>\n";
        out << "<h1>" << docdetail::htmlEscape(doc.title) << "</h1>\n";
        for (const auto& s : doc.sections) docdetail::renderSectionHtml(out, s, 2);
        out << "</body>\n</html>\n";
    }
    return out.str();
}

} // namespace kweave
