use crate::parser::{ClassDecl, MethodDecl};

use super::{longest_path_layers, CodeModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodKind {
    Accessor,
    Mutator,
    Constructor,
    Other,
}

impl MethodKind {
    pub const ALL: [MethodKind; 4] = [
        MethodKind::Accessor,
        MethodKind::Mutator,
        MethodKind::Constructor,
        MethodKind::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodKind::Accessor => "accessor",
            MethodKind::Mutator => "mutator",
            MethodKind::Constructor => "constructor",
            MethodKind::Other => "other",
        }
    }
}

/// Constructor by name, accessor and mutator by naming convention plus field effects.
pub fn classify_method(method: &MethodDecl, class_simple_name: &str) -> MethodKind {
    let returns_value = !method.return_type.is_empty() && method.return_type != "void";
    if method.name == class_simple_name && method.return_type.is_empty() {
        MethodKind::Constructor
    } else if (method.name.starts_with("get") || method.name.starts_with("is"))
        && method.param_count == 0
        && returns_value
        && method.writes_fields.is_empty()
    {
        MethodKind::Accessor
    } else if method.name.starts_with("set") && method.param_count >= 1 && !method.writes_fields.is_empty() {
        MethodKind::Mutator
    } else {
        MethodKind::Other
    }
}

/// Fraction of non-constructor method pairs that touch at least one common field.
///
/// Classes with no fields or fewer than two non-constructor methods score 1.0.
pub fn compute_cohesion(class: &ClassDecl) -> f64 {
    let simple = class.simple_name();
    let methods: Vec<&MethodDecl> = class
        .methods
        .iter()
        .filter(|m| classify_method(m, simple) != MethodKind::Constructor)
        .collect();
    if methods.len() < 2 || class.fields.is_empty() {
        return 1.0;
    }
    let mut total = 0usize;
    let mut sharing = 0usize;
    for (i, a) in methods.iter().enumerate() {
        for b in &methods[i + 1..] {
            total += 1;
            let touches = |f: &String| b.reads_fields.contains(f) || b.writes_fields.contains(f);
            if a.reads_fields.iter().chain(a.writes_fields.iter()).any(touches) {
                sharing += 1;
            }
        }
    }
    sharing as f64 / total as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KindHistogram {
    pub accessor: usize,
    pub mutator: usize,
    pub constructor: usize,
    pub other: usize,
}

impl KindHistogram {
    pub fn add(&mut self, kind: MethodKind) {
        *self.slot(kind) += 1;
    }

    pub fn get(&self, kind: MethodKind) -> usize {
        match kind {
            MethodKind::Accessor => self.accessor,
            MethodKind::Mutator => self.mutator,
            MethodKind::Constructor => self.constructor,
            MethodKind::Other => self.other,
        }
    }

    fn slot(&mut self, kind: MethodKind) -> &mut usize {
        match kind {
            MethodKind::Accessor => &mut self.accessor,
            MethodKind::Mutator => &mut self.mutator,
            MethodKind::Constructor => &mut self.constructor,
            MethodKind::Other => &mut self.other,
        }
    }

    pub fn total(&self) -> usize {
        self.accessor + self.mutator + self.constructor + self.other
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassMetrics {
    pub method_count: usize,
    pub loc: u32,
    pub depth: usize,
    pub fan_out: usize,
    pub fan_in: usize,
    pub cohesion: f64,
    pub kinds: Vec<MethodKind>,
    pub kind_histogram: KindHistogram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PackageMetrics {
    pub class_count: usize,
    pub method_count: usize,
    pub loc: u32,
    pub inheritance_edge_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Totals {
    pub packages: usize,
    pub classes: usize,
    pub methods: usize,
    pub loc: u32,
    pub inheritance_edges: usize,
    pub call_edges: usize,
    pub calls: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Metrics {
    /// Parallel to [`CodeModel::classes`].
    pub classes: Vec<ClassMetrics>,
    /// Parallel to [`CodeModel::packages`].
    pub packages: Vec<PackageMetrics>,
    pub totals: Totals,
}

impl Metrics {
    pub fn max_fan_out(&self) -> usize {
        self.classes.iter().map(|c| c.fan_out).max().unwrap_or(0)
    }
}

/// Lines of the class span not covered by directly nested type declarations.
fn own_loc(model: &CodeModel, class: usize) -> u32 {
    let decl = &model.classes[class].decl;
    let file = &model.classes[class].file;
    let mut nested: Vec<(u32, u32)> = model
        .classes
        .iter()
        .filter(|c| &c.file == file && c.decl.enclosing.as_deref() == Some(decl.name.as_str()))
        .map(|c| (c.decl.span.line_start, c.decl.span.line_end))
        .collect();
    nested.sort_unstable();
    let mut covered = 0;
    let mut cursor = decl.span.line_start;
    for (a, b) in nested {
        let a = a.max(cursor);
        if b >= a {
            covered += b - a + 1;
            cursor = b + 1;
        }
    }
    decl.span.line_count() - covered
}

/// Per-class and per-package metrics. Expects both graphs resolved.
pub fn compute_metrics(model: &CodeModel) -> Metrics {
    let depths =
        longest_path_layers(model.classes.len(), &model.inheritance_edges).expect("inheritance cycles are rejected during resolution");
    let mut fan_out = vec![0usize; model.classes.len()];
    let mut fan_in = vec![0usize; model.classes.len()];
    for e in &model.call_edges {
        fan_out[e.caller.class] += e.count;
        fan_in[e.callee.class] += e.count;
    }

    let classes: Vec<ClassMetrics> = model
        .classes
        .iter()
        .enumerate()
        .map(|(i, record)| {
            let simple = record.decl.simple_name();
            let kinds: Vec<MethodKind> = record.decl.methods.iter().map(|m| classify_method(m, simple)).collect();
            let mut kind_histogram = KindHistogram::default();
            kinds.iter().for_each(|&k| kind_histogram.add(k));
            ClassMetrics {
                method_count: record.decl.methods.len(),
                loc: own_loc(model, i),
                depth: depths[i],
                fan_out: fan_out[i],
                fan_in: fan_in[i],
                cohesion: compute_cohesion(&record.decl),
                kinds,
                kind_histogram,
            }
        })
        .collect();

    let mut packages = vec![PackageMetrics::default(); model.packages.len()];
    for (i, record) in model.classes.iter().enumerate() {
        let p = &mut packages[record.package];
        p.class_count += 1;
        p.method_count += classes[i].method_count;
        p.loc += classes[i].loc;
    }
    for e in &model.inheritance_edges {
        packages[model.classes[e.child].package].inheritance_edge_count += 1;
    }

    let totals = Totals {
        packages: packages.len(),
        classes: classes.len(),
        methods: classes.iter().map(|c| c.method_count).sum(),
        loc: classes.iter().map(|c| c.loc).sum(),
        inheritance_edges: model.inheritance_edges.len(),
        call_edges: model.call_edges.len(),
        calls: model.call_edges.iter().map(|e| e.count).sum(),
    };
    Metrics { classes, packages, totals }
}
