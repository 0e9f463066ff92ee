//! Line-oriented report format.
//!
//! Every report opens with the schema line `# primdec report v1`, then the
//! command, the ring header, the SHA-256 of the input bytes and the seed.
//! Nothing time- or host-dependent is written, so identical runs give
//! byte-identical reports.

use std::fmt::Write as _;

use primdec::{
    Certificate, Field, Ideal, MaximalityCertificate, MaximalityVerdict, PolyRing, Polynomial, Q,
};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "# primdec report v1";

pub struct Report {
    text: String,
}

impl Report {
    pub fn new(command: &str, ring: &PolyRing, input: &[u8], seed: u64) -> Self {
        let mut text = String::new();
        text.push_str(SCHEMA);
        text.push('\n');
        let _ = writeln!(text, "# command: {command}");
        let _ = writeln!(text, "# {}", ring.header("Q"));
        let _ = writeln!(text, "# input-sha256: {}", sha256_hex(input));
        let _ = writeln!(text, "# seed: {seed}");
        Report { text }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// Reduced degrevlex basis of `ideal`, indented under a label.
    pub fn basis(&mut self, label: &str, ideal: &Ideal<Q>) -> primdec::Result<()> {
        let gb = ideal.reduced_basis()?;
        self.line(format!("{label}: {}", gb.elements().len()));
        for g in gb.elements() {
            self.line(format!("  {g}"));
        }
        Ok(())
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn vars(u: &[usize], ring: &PolyRing) -> String {
    let names: Vec<&str> = u.iter().map(|&v| ring.name(v)).collect();
    names.join(",")
}

pub fn certificate(c: &Certificate, ring: &PolyRing) -> String {
    match c {
        Certificate::Linear => "linear".into(),
        Certificate::Eisenstein { var } => format!("eisenstein({})", ring.name(*var)),
        Certificate::Specialization { point } => {
            let pts: Vec<String> = point
                .iter()
                .map(|(v, a)| format!("{}={a}", ring.name(*v)))
                .collect();
            format!("specialization({})", pts.join(","))
        }
        Certificate::Exhaustive => "exhaustive".into(),
    }
}

pub fn maximality_certificate<C: Field>(c: &MaximalityCertificate<C>, ring: &PolyRing) -> String {
    match c {
        MaximalityCertificate::Linear => "linear".into(),
        MaximalityCertificate::Variable {
            var,
            certificate: cert,
        } => {
            format!("variable {} {}", ring.name(*var), certificate(cert, ring))
        }
        MaximalityCertificate::LinearForm {
            form,
            certificate: cert,
        } => {
            format!("linear-form {form} {}", certificate(cert, ring))
        }
    }
}

pub fn maximality<C: Field>(m: &MaximalityVerdict<C>, ring: &PolyRing) -> String {
    match m {
        MaximalityVerdict::Maximal(c) => format!("MAXIMAL {}", maximality_certificate(c, ring)),
        MaximalityVerdict::NotMaximal { factors } => {
            format!("NOT_MAXIMAL factors={}", polys(factors))
        }
        MaximalityVerdict::Unknown { obligation } => format!("UNKNOWN {obligation}"),
    }
}

pub fn polys<C: Field>(ps: &[Polynomial<C>]) -> String {
    let v: Vec<String> = ps.iter().map(|p| format!("({p})")).collect();
    v.join("*")
}
