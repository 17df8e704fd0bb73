use csv::{Terminator, WriterBuilder};

use crate::body::FocalElement;
use crate::codon::{Decision, DecodingTrace, EvolutionTrajectory};
use crate::entropy::entropy;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::numeric::{render_f64, Mass};

fn writer() -> csv::Writer<Vec<u8>> {
    WriterBuilder::new()
        .terminator(Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn io(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn focal_label(frame: &Frame, focal: &FocalElement) -> String {
    match focal {
        FocalElement::Theta => "theta".into(),
        FocalElement::Empty => "empty".into(),
        FocalElement::Subset(set) => frame.describe(set),
    }
}

fn decision_label(decision: &Decision) -> String {
    match decision {
        Decision::AminoAcid(name) => name.clone(),
        Decision::Undecided(tied) => format!("undecided:{}", tied.join("|")),
    }
}

/// One row per (step, focal element of the cumulative body). The decision
/// column is filled on the rows of the final step only.
pub fn trace_to_csv<M: Mass>(trace: &DecodingTrace<M>) -> Result<String> {
    let frame = trace.final_body().frame();
    let names: Vec<&str> = frame.possibility_names().collect();
    let mut w = writer();
    let mut header = vec!["step".to_string(), "focal".into(), "mass".into()];
    header.extend(names.iter().map(|n| format!("bel_{n}")));
    header.extend(names.iter().map(|n| format!("pl_{n}")));
    header.extend(["entropy".to_string(), "decision".into()]);
    w.write_record(&header).map_err(io)?;

    let last = trace.steps.len();
    for step in &trace.steps {
        let h = render_f64(entropy(&step.cumulative, trace.mode)?.total);
        let decision = if step.time == last {
            decision_label(&trace.decision)
        } else {
            String::new()
        };
        for (focal, mass) in step.cumulative.focal_elements() {
            let mut row = vec![step.time.to_string(), focal_label(frame, focal), mass.render()];
            row.extend(names.iter().map(|n| step.evaluations[*n].belief.render()));
            row.extend(names.iter().map(|n| step.evaluations[*n].plausibility.render()));
            row.push(h.clone());
            row.push(decision.clone());
            w.write_record(&row).map_err(io)?;
        }
    }
    finish(w)
}

/// Row 0 is the starting code; each later row is one proposal.
pub fn trajectory_to_csv<M: Mass>(trajectory: &EvolutionTrajectory<M>) -> Result<String> {
    let mut w = writer();
    w.write_record(["step", "move", "accepted", "entropy", "current", "ambiguity"])
        .map_err(io)?;
    let start = render_f64(trajectory.initial_entropy);
    w.write_record([
        "0",
        "start",
        "",
        &start,
        &start,
        &render_f64(trajectory.initial_ambiguity),
    ])
    .map_err(io)?;
    for s in &trajectory.steps {
        w.write_record([
            s.step.to_string(),
            s.proposal.clone(),
            s.accepted.to_string(),
            render_f64(s.entropy),
            render_f64(s.current),
            render_f64(s.ambiguity),
        ])
        .map_err(io)?;
    }
    finish(w)
}
