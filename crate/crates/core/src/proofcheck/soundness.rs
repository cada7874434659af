use std::collections::{BTreeMap, BTreeSet};

use crate::classify::check_basic;
use crate::construct::enumerate_semigroups;
use crate::error::{Error, Result};
use crate::proofcheck::ast::{Atom, Equation, Mode, ProofScript, Word};
use crate::proofcheck::engine::check_proof;
use crate::table::CayleyTable;

/// Model-theoretic audit of the replay checker.
#[derive(Debug, Clone)]
pub struct SoundnessReport {
    pub mode: Mode,
    pub max_order: usize,
    /// Claims whose replay succeeded and whose goals were therefore audited.
    pub claims_audited: Vec<String>,
    /// Tables in the audited universe (cancellative tables only when the
    /// script is in cancellative mode).
    pub tables_checked: u64,
    /// (table, interpretation) pairs enumerated.
    pub models_checked: u64,
    /// Models satisfying every hypothesis under all variable assignments.
    pub hypothesis_models: u64,
    /// Verified goals that fail in some hypothesis-satisfying model.
    /// A sound checker leaves this empty.
    pub discrepancies: Vec<String>,
}

/// Equation compiled against fixed constant and per-equation variable
/// indices so evaluation needs no name lookups.
enum CAtom {
    Var(usize),
    Const(usize),
    G(CWord),
    Inv(CWord),
}

struct CWord(Vec<CAtom>);

struct CEq {
    lhs: CWord,
    rhs: CWord,
    var_count: usize,
}

fn compile_word(
    word: &Word,
    vars: &mut Vec<String>,
    consts: &BTreeMap<String, usize>,
) -> CWord {
    let atoms = word
        .atoms()
        .iter()
        .map(|atom| match atom {
            Atom::Var(name) => {
                let slot = match vars.iter().position(|v| v == name) {
                    Some(i) => i,
                    None => {
                        vars.push(name.clone());
                        vars.len() - 1
                    }
                };
                CAtom::Var(slot)
            }
            Atom::Const(name) => CAtom::Const(consts[name]),
            Atom::G(inner) => CAtom::G(compile_word(inner, vars, consts)),
            Atom::Inv(inner) => CAtom::Inv(compile_word(inner, vars, consts)),
        })
        .collect();
    CWord(atoms)
}

fn compile_eq(eq: &Equation, consts: &BTreeMap<String, usize>) -> CEq {
    let mut vars = Vec::new();
    let lhs = compile_word(&eq.lhs, &mut vars, consts);
    let rhs = compile_word(&eq.rhs, &mut vars, consts);
    CEq {
        lhs,
        rhs,
        var_count: vars.len(),
    }
}

struct Interp<'a> {
    table: &'a CayleyTable,
    inv: &'a [usize],
    g: &'a [usize],
    consts: &'a [usize],
}

fn eval(word: &CWord, m: &Interp<'_>, assign: &[usize]) -> usize {
    let mut acc: Option<usize> = None;
    for atom in &word.0 {
        let v = match atom {
            CAtom::Var(i) => assign[*i],
            CAtom::Const(i) => m.consts[*i],
            CAtom::G(inner) => m.g[eval(inner, m, assign)],
            CAtom::Inv(inner) => m.inv[eval(inner, m, assign)],
        };
        acc = Some(match acc {
            None => v,
            Some(a) => m.table.at(a, v),
        });
    }
    acc.expect("words are nonempty")
}

/// Returns a violating assignment if the equation fails somewhere.
fn violating_assignment(eq: &CEq, m: &Interp<'_>) -> Option<Vec<usize>> {
    let n = m.table.order();
    let mut assign = vec![0usize; eq.var_count];
    loop {
        if eval(&eq.lhs, m, &assign) != eval(&eq.rhs, m, &assign) {
            return Some(assign);
        }
        let mut pos = 0;
        loop {
            if pos == assign.len() {
                return None;
            }
            assign[pos] += 1;
            if assign[pos] < n {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

fn scan_word(word: &Word, uses_inv: &mut bool, uses_g: &mut bool, consts: &mut BTreeSet<String>) {
    for atom in word.atoms() {
        match atom {
            Atom::Var(_) => {}
            Atom::Const(name) => {
                consts.insert(name.clone());
            }
            Atom::G(inner) => {
                *uses_g = true;
                scan_word(inner, uses_inv, uses_g, consts);
            }
            Atom::Inv(inner) => {
                *uses_inv = true;
                scan_word(inner, uses_inv, uses_g, consts);
            }
        }
    }
}

/// All self-maps of {0..n-1} in lexicographic order, or just the
/// identity when the script never mentions the corresponding symbol.
fn interpretation_maps(n: usize, used: bool) -> Vec<Vec<usize>> {
    if !used {
        return vec![(0..n).collect()];
    }
    let total = n.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut map = vec![0usize; n];
    loop {
        out.push(map.clone());
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            map[pos] += 1;
            if map[pos] < n {
                break;
            }
            map[pos] = 0;
            pos += 1;
        }
    }
}

fn table_digest(table: &CayleyTable) -> String {
    (0..table.order())
        .map(|i| {
            table
                .row(i)
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Checks every claim that replays successfully against every finite
/// model of the script's hypotheses up to `max_order`.
///
/// A model is a table together with interpretations of the inverse
/// mark, the unary map g, and each constant, whichever of those the
/// script mentions; hypotheses and goals are required to hold under
/// all assignments of table elements to variables. Cancellative-mode
/// scripts are audited over cancellative tables only, since their
/// cancellation steps assume that theory.
pub fn audit_script_soundness(script: &ProofScript, max_order: usize) -> Result<SoundnessReport> {
    if max_order == 0 {
        return Err(Error::input("soundness audit needs max_order >= 1"));
    }
    let report = check_proof(script)?;

    let mut uses_inv = false;
    let mut uses_g = false;
    let mut const_names = BTreeSet::new();
    for eq in script
        .hypotheses
        .iter()
        .chain(script.claims.iter().map(|c| &c.goal))
    {
        scan_word(&eq.lhs, &mut uses_inv, &mut uses_g, &mut const_names);
        scan_word(&eq.rhs, &mut uses_inv, &mut uses_g, &mut const_names);
    }
    let const_index: BTreeMap<String, usize> = const_names
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), i))
        .collect();
    let const_list: Vec<&str> = const_names.iter().map(String::as_str).collect();

    let hyps: Vec<(&str, CEq)> = script
        .hypotheses
        .iter()
        .map(|h| (h.name.as_str(), compile_eq(h, &const_index)))
        .collect();
    let goals: Vec<(&str, CEq)> = script
        .claims
        .iter()
        .zip(&report.claims)
        .filter(|(_, outcome)| outcome.verified)
        .map(|(claim, _)| (claim.goal.name.as_str(), compile_eq(&claim.goal, &const_index)))
        .collect();

    let mut tables_checked = 0u64;
    let mut models_checked = 0u64;
    let mut hypothesis_models = 0u64;
    let mut discrepancies = Vec::new();

    for n in 1..=max_order {
        let const_envs = {
            let total = n.pow(const_list.len() as u32);
            let mut envs = Vec::with_capacity(total);
            let mut env = vec![0usize; const_list.len()];
            loop {
                envs.push(env.clone());
                let mut pos = 0;
                loop {
                    if pos == env.len() {
                        break;
                    }
                    env[pos] += 1;
                    if env[pos] < n {
                        break;
                    }
                    env[pos] = 0;
                    pos += 1;
                }
                if env.iter().all(|&e| e == 0) {
                    break;
                }
            }
            envs
        };
        let inv_maps = interpretation_maps(n, uses_inv);
        let g_maps = interpretation_maps(n, uses_g);

        for table in enumerate_semigroups(n)? {
            if script.mode == Mode::Cancellative && !check_basic(&table)?.cancellative {
                continue;
            }
            tables_checked += 1;
            for inv in &inv_maps {
                for g in &g_maps {
                    for consts in &const_envs {
                        models_checked += 1;
                        let m = Interp {
                            table: &table,
                            inv,
                            g,
                            consts,
                        };
                        if hyps
                            .iter()
                            .any(|(_, eq)| violating_assignment(eq, &m).is_some())
                        {
                            continue;
                        }
                        hypothesis_models += 1;
                        for (name, goal) in &goals {
                            if let Some(assign) = violating_assignment(goal, &m) {
                                discrepancies.push(format!(
                                    "claim {name} fails in an order {n} model \
                                     (table {t}; inv {inv:?}; g {g:?}; consts {cs:?}) \
                                     at assignment {assign:?}",
                                    t = table_digest(&table),
                                    cs = const_list
                                        .iter()
                                        .zip(consts)
                                        .map(|(c, v)| format!("{c}={v}"))
                                        .collect::<Vec<_>>(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(SoundnessReport {
        mode: script.mode,
        max_order,
        claims_audited: goals.iter().map(|(name, _)| name.to_string()).collect(),
        tables_checked,
        models_checked,
        hypothesis_models,
        discrepancies,
    })
}
