//! Metrics report.
//!
//! ```text
//! {
//!   "corpus": { "files": [path, ...] },
//!   "totals": { packages, classes, methods, loc, inheritance_edges, call_edges, calls },
//!   "packages": [ { name, class_count, method_count, loc, inheritance_edge_count } ],
//!   "classes": [ { package, name, file, is_interface, is_abstract, method_count, loc,
//!                  depth, fan_in, fan_out, cohesion,
//!                  kinds: { accessor, mutator, constructor, other },
//!                  methods: [ { name, kind, param_count, loc } ] } ],
//!   "inheritance_edges": [ { child, parent } ],
//!   "call_edges": [ { caller, callee, count } ],
//!   "unresolved_supers": [ { class, super } ]
//! }
//! ```
//!
//! Classes are named `<pkg>.<Class>` (or just `<Class>` in the default
//! package) in edge lists, methods `<class>#<method>`. Reals carry four
//! fractional digits.

use std::fmt::Write as _;

use super::{fixed, ExportArtifact, ExportKind};
use crate::model::{CodeModel, MethodId, MethodKind, Metrics};

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn class_name(model: &CodeModel, class: usize) -> String {
    let record = &model.classes[class];
    if record.decl.package_name.is_empty() {
        record.decl.name.clone()
    } else {
        format!("{}.{}", record.decl.package_name, record.decl.name)
    }
}

fn method_name(model: &CodeModel, id: MethodId) -> String {
    format!(
        "{}#{}",
        class_name(model, id.class),
        model.classes[id.class].decl.methods[id.method].name
    )
}

/// `items` rendered one per line at `indent`, or `[]` when empty.
fn array(out: &mut String, indent: &str, items: Vec<String>) {
    if items.is_empty() {
        out.push_str("[]");
        return;
    }
    out.push_str("[\n");
    let n = items.len();
    for (i, item) in items.into_iter().enumerate() {
        out.push_str(indent);
        out.push_str("  ");
        out.push_str(&item);
        out.push_str(if i + 1 < n { ",\n" } else { "\n" });
    }
    out.push_str(indent);
    out.push(']');
}

pub fn export_report(model: &CodeModel, metrics: &Metrics) -> ExportArtifact {
    let mut out = String::from("{\n  \"corpus\": {\n    \"files\": ");
    array(&mut out, "    ", model.files.iter().map(|f| quote(f)).collect());
    out.push_str("\n  },\n");

    let t = metrics.totals;
    writeln!(
        out,
        "  \"totals\": {{\"packages\": {}, \"classes\": {}, \"methods\": {}, \"loc\": {}, \"inheritance_edges\": {}, \"call_edges\": {}, \"calls\": {}}},",
        t.packages, t.classes, t.methods, t.loc, t.inheritance_edges, t.call_edges, t.calls
    )
    .unwrap();

    out.push_str("  \"packages\": ");
    let packages = model
        .packages
        .iter()
        .zip(&metrics.packages)
        .map(|(p, m)| {
            format!(
                "{{\"name\": {}, \"class_count\": {}, \"method_count\": {}, \"loc\": {}, \"inheritance_edge_count\": {}}}",
                quote(&p.name),
                m.class_count,
                m.method_count,
                m.loc,
                m.inheritance_edge_count
            )
        })
        .collect();
    array(&mut out, "  ", packages);
    out.push_str(",\n  \"classes\": ");

    let classes = model
        .classes
        .iter()
        .zip(&metrics.classes)
        .map(|(record, m)| {
            let d = &record.decl;
            let h = m.kind_histogram;
            let methods: Vec<String> = d
                .methods
                .iter()
                .zip(&m.kinds)
                .map(|(method, kind)| {
                    format!(
                        "{{\"name\": {}, \"kind\": \"{}\", \"param_count\": {}, \"loc\": {}}}",
                        quote(&method.name),
                        kind.as_str(),
                        method.param_count,
                        method.loc
                    )
                })
                .collect();
            format!(
                "{{\"package\": {}, \"name\": {}, \"file\": {}, \"is_interface\": {}, \"is_abstract\": {}, \
                 \"method_count\": {}, \"loc\": {}, \"depth\": {}, \"fan_in\": {}, \"fan_out\": {}, \"cohesion\": {}, \
                 \"kinds\": {{\"accessor\": {}, \"mutator\": {}, \"constructor\": {}, \"other\": {}}}, \"methods\": [{}]}}",
                quote(&d.package_name),
                quote(&d.name),
                quote(&record.file),
                d.is_interface,
                d.is_abstract,
                m.method_count,
                m.loc,
                m.depth,
                m.fan_in,
                m.fan_out,
                fixed(m.cohesion, 4),
                h.get(MethodKind::Accessor),
                h.get(MethodKind::Mutator),
                h.get(MethodKind::Constructor),
                h.get(MethodKind::Other),
                methods.join(", ")
            )
        })
        .collect();
    array(&mut out, "  ", classes);

    out.push_str(",\n  \"inheritance_edges\": ");
    let edges = model
        .inheritance_edges
        .iter()
        .map(|e| {
            format!(
                "{{\"child\": {}, \"parent\": {}}}",
                quote(&class_name(model, e.child)),
                quote(&class_name(model, e.parent))
            )
        })
        .collect();
    array(&mut out, "  ", edges);

    out.push_str(",\n  \"call_edges\": ");
    let calls = model
        .call_edges
        .iter()
        .map(|e| {
            format!(
                "{{\"caller\": {}, \"callee\": {}, \"count\": {}}}",
                quote(&method_name(model, e.caller)),
                quote(&method_name(model, e.callee)),
                e.count
            )
        })
        .collect();
    array(&mut out, "  ", calls);

    out.push_str(",\n  \"unresolved_supers\": ");
    let unresolved = model
        .unresolved_supers
        .iter()
        .map(|(c, s)| format!("{{\"class\": {}, \"super\": {}}}", quote(&class_name(model, *c)), quote(s)))
        .collect();
    array(&mut out, "  ", unresolved);
    out.push_str("\n}\n");

    ExportArtifact {
        kind: ExportKind::Report,
        bytes: out.into_bytes(),
    }
}
