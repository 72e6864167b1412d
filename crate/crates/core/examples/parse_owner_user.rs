//! Parse the two-class example and print declarations, fields and call sites.

use std::path::Path;

use codeforest::corpus::parse_corpus;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/owner_user");
    let corpus = parse_corpus(&root).expect("fixture directory");
    for file in &corpus.files {
        println!("{}", file.path);
        for class in &file.classes {
            match &class.super_name {
                Some(s) => println!("  class {} extends {}", class.name, s),
                None => println!("  class {}", class.name),
            }
            for f in &class.fields {
                println!("    field {}: {}", f.name, f.declared_type);
            }
            for m in &class.methods {
                let calls: Vec<&str> = m.call_sites.iter().map(|c| c.callee_name.as_str()).collect();
                println!(
                    "    {}({}) lines {}-{} reads {:?} writes {:?} calls {:?}",
                    m.name, m.param_count, m.span.line_start, m.span.line_end, m.reads_fields, m.writes_fields, calls
                );
            }
        }
    }
}
