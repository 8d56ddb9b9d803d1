//! Classify, reduce and compare a few forms.
//!
//! cargo run --example forms_reduction

use quadlab::QuadForm;

fn main() -> quadlab::Result<()> {
    let forms = [
        QuadForm::new(5, 14, 10),
        QuadForm::new(1, 0, -2),
        QuadForm::new(2, 3, 1),
        QuadForm::new(7, 13, 11),
    ];
    for q in &forms {
        print!("{q}  disc {}  {}", q.discriminant(), q.classify().tag());
        match q.reduce() {
            Ok((r, t)) => println!("  reduced {r} via {t}"),
            Err(e) => println!("  ({e})"),
        }
    }

    // indefinite forms reduce to a cycle rather than a single form
    for entry in QuadForm::new(1, 0, -2).cycle()? {
        println!("cycle: {}", entry.form);
    }

    // both pairs share a discriminant; only the first pair is equivalent
    for (p, q) in [
        (QuadForm::new(1, 0, 1), QuadForm::new(5, 14, 10)),
        (QuadForm::new(1, 0, 8), QuadForm::new(3, 2, 3)),
    ] {
        match p.equivalent(&q)? {
            Some(t) => println!("{p} ~ {q} via {t}, check {}", p.apply_transform(&t)),
            None => println!("{p} and {q} are not properly equivalent"),
        }
    }
    Ok(())
}
