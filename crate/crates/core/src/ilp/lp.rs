use alloc::string::String;
use core::fmt::Write;

use super::model::{BinaryModel, ModelKind, VarId};

const TERMS_PER_LINE: usize = 8;

fn write_terms(out: &mut String, m: &BinaryModel, terms: &[(VarId, i64)]) {
    for (k, &(v, c)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if c < 0 { "-" } else { "+" };
        if k == 0 {
            if c < 0 {
                out.push_str(" -");
            }
        } else {
            let _ = write!(out, " {sign}");
        }
        match c.abs() {
            1 => {}
            a => {
                let _ = write!(out, " {a}");
            }
        }
        let _ = write!(out, " {}", m.name(v));
    }
}

/// Renders the model in CPLEX LP format.
pub fn export_lp(m: &BinaryModel) -> String {
    let mut out = String::new();
    let kind = match m.kind {
        ModelKind::Twohop => "twohop",
        ModelKind::Multihop => "multihop",
    };
    let _ = writeln!(
        out,
        "\\ {kind} pigeon placement: {} binaries, {} constraints",
        m.var_count(),
        m.constraints().len()
    );
    out.push_str("Minimize\n obj:");
    write_terms(&mut out, m, m.objective());
    out.push_str("\nSubject To\n");
    for c in m.constraints() {
        let _ = write!(out, " {}:", c.name);
        write_terms(&mut out, m, &c.terms);
        let _ = writeln!(out, " {} {}", c.relation.symbol(), c.rhs);
    }
    out.push_str("Binary\n");
    for (k, name) in m.variables().iter().enumerate() {
        out.push(' ');
        let _ = write!(out, "{name}");
        if (k + 1) % TERMS_PER_LINE == 0 || k + 1 == m.var_count() {
            out.push('\n');
        }
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demand::DemandGraph;
    use crate::ilp::{build_multihop_model, build_twohop_model};

    #[test]
    fn single_demand_multihop_golden() {
        let g = DemandGraph::new(2, [(0, 1)]).unwrap();
        let lp = export_lp(&build_multihop_model(&g).unwrap());
        let expected = "\
\\ multihop pigeon placement: 14 binaries, 11 constraints
Minimize
 obj: x_0_1 + x_0_2 + x_0_3 + x_0_4 + x_1_1 + x_1_2 + x_1_3 + x_1_4
Subject To
 pos_0_1: x_0_1 + x_1_1 <= 1
 pos_0_2: x_0_2 + x_1_2 <= 1
 pos_0_3: x_0_3 + x_1_3 <= 1
 pos_0_4: x_0_4 + x_1_4 <= 1
 demand_0_1: y_0_1_1_2 + y_0_1_1_3 + y_0_1_1_4 + y_0_1_2_3 + y_0_1_2_4 + y_0_1_3_4 = 1
 pair_0_1_1_2: 2 y_0_1_1_2 - x_0_1 - x_1_2 <= 0
 pair_0_1_1_3: 2 y_0_1_1_3 - x_0_1 - x_1_3 <= 0
 pair_0_1_1_4: 2 y_0_1_1_4 - x_0_1 - x_1_4 <= 0
 pair_0_1_2_3: 2 y_0_1_2_3 - x_0_2 - x_1_3 <= 0
 pair_0_1_2_4: 2 y_0_1_2_4 - x_0_2 - x_1_4 <= 0
 pair_0_1_3_4: 2 y_0_1_3_4 - x_0_3 - x_1_4 <= 0
Binary
 x_0_1 x_0_2 x_0_3 x_0_4 x_1_1 x_1_2 x_1_3 x_1_4
 y_0_1_1_2 y_0_1_1_3 y_0_1_1_4 y_0_1_2_3 y_0_1_2_4 y_0_1_3_4
End
";
        assert_eq!(lp, expected);
    }

    #[test]
    fn twohop_declares_every_binary() {
        let g = DemandGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let lp = export_lp(&build_twohop_model(&g).unwrap());
        let binary = lp.split("Binary\n").nth(1).unwrap().trim_end_matches("End\n");
        assert_eq!(binary.split_whitespace().count(), 48);
        assert!(lp.contains(" slot_1:"));
        assert!(lp.contains(" leg1_0_0_1_1: y_0_0_1_1 <= 0"));
        assert!(lp.lines().all(|l| l.len() < 200));
    }

    #[test]
    fn empty_objective() {
        let lp = export_lp(&build_multihop_model(&DemandGraph::empty(2)).unwrap());
        assert!(lp.contains("Minimize\n obj:\nSubject To\nBinary\nEnd\n"));
    }
}
