use std::fmt::Write;

use pollard::certificate::{Certificate, CertificateNode, NodeKind, Verification};
use pollard::{BoundReport, Spectrum};

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn spectrum_text(s: &Spectrum) -> String {
    let mut out = String::new();
    writeln!(out, "r = {}", join(s.counts())).unwrap();
    let m = s.card_a().min(s.card_b());
    writeln!(out, "|N_t| = {}", join((1..=m).map(|t| s.n_t_card(t)))).unwrap();
    writeln!(out, "S_t = {}", join(s.partial_sums())).unwrap();
    out
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn report_text(r: &BoundReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "group {}  A = [{}]  B = [{}]  t = {}", r.group, join(&r.set_a), join(&r.set_b), r.t).unwrap();
    if let Some([a0, b0]) = r.normalization_shift {
        let swapped = if r.operands_swapped { " (operands swapped)" } else { "" };
        writeln!(w, "normalized by shifting A by -{a0}, B by -{b0}{swapped}").unwrap();
    }
    writeln!(w, "lhs S_t = {}  alpha = {}  w = {}  mu = {}", r.lhs, r.alpha, r.w, opt(r.mu)).unwrap();
    writeln!(w, "main:        rhs {}  slack {}  strict case {}", opt(r.rhs_main), opt(r.slack_main), r.strict_case).unwrap();
    if r.rhs_green_ruzsa.is_some() {
        writeln!(w, "green_ruzsa: rhs {}  slack {}", opt(r.rhs_green_ruzsa), opt(r.slack_green_ruzsa)).unwrap();
    }
    if r.rhs_pollard.is_some() {
        writeln!(w, "pollard:     rhs {}  slack {}", opt(r.rhs_pollard), opt(r.slack_pollard)).unwrap();
    }
    if let Some(g) = &r.grynkiewicz {
        let flag = if g.n2_empty { "  (N_2 empty)" } else { "" };
        writeln!(w, "grynkiewicz: |N_1|+|N_2| = {}  rhs {}  slack {}  |period(N_2)| = {}{flag}", g.lhs, g.rhs, g.slack, g.period_size).unwrap();
    }
    if let Some(d) = &r.dicks_ivanov {
        writeln!(w, "dicks_ivanov: {:?} (|N_1|+|N_2| = {} vs {})", d.outcome, d.lhs, d.rhs).unwrap();
    }
    if let Some(k) = &r.kneser {
        if k.applicable {
            writeln!(
                w,
                "kneser: |A+B| = {} <= {}; |H| = {}  KN1 {}  KN2 {}",
                k.sumset_size,
                k.small_sumset_threshold,
                k.period_size,
                opt(k.kn1),
                opt(k.kn2)
            )
            .unwrap();
        } else {
            writeln!(w, "kneser: not applicable (|A+B| = {} > {}); |H| = {}", k.sumset_size, k.small_sumset_threshold, k.period_size).unwrap();
        }
    }
    if r.violations.is_empty() {
        writeln!(w, "violations: none").unwrap();
    } else {
        writeln!(w, "VIOLATIONS: {}", r.violations.join(", ")).unwrap();
    }
    out
}

pub fn certificate_text(cert: &Certificate, v: &Verification, rhs_main: i64, s_t: u64) -> String {
    let mut out = String::new();
    writeln!(out, "certificate over {}", cert.group).unwrap();
    node_text(&mut out, &cert.root, 0);
    writeln!(
        out,
        "rhs_main = {rhs_main} <= claimed = {} <= S_t = {s_t}",
        cert.claimed_bound()
    )
    .unwrap();
    if v.valid {
        writeln!(out, "verified: {} nodes", v.nodes_checked).unwrap();
    } else {
        writeln!(out, "REJECTED:").unwrap();
        for f in &v.failures {
            writeln!(out, "  {}: {}", f.path, f.message).unwrap();
        }
    }
    out
}

fn node_text(out: &mut String, node: &CertificateNode, depth: usize) {
    let indent = "  ".repeat(depth);
    let kind = match node.kind {
        NodeKind::BaseCase => "base",
        NodeKind::PeriodicCase => "periodic",
        NodeKind::SplitRecurseSame => "split (t <= v)",
        NodeKind::SplitRecurseDiff => "split (t > v)",
    };
    let mut params = String::new();
    if let (Some([a, b]), Some(v)) = (node.pair, node.v) {
        write!(params, "  a = {a}, b = {b}, v = {v}").unwrap();
    }
    writeln!(
        out,
        "{indent}{kind}: A = [{}] B = [{}] t = {} alpha = {}{params}  bound {}",
        join(&node.set_a),
        join(&node.set_b),
        node.t,
        node.alpha,
        node.claimed_bound
    )
    .unwrap();
    for child in &node.children {
        node_text(out, child, depth + 1);
    }
}
