// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Election data model and the ballot file format.
//!
//! A ballot file is UTF-8 text: the candidate count `m`, the voter count `n`,
//! then `n` lines each holding a comma-separated permutation of `0..m`, most
//! preferred first. Lines starting with `#` and blank lines are ignored.

use std::fmt;

use thiserror::Error;

/// Dense 0-based voter index.
pub type Voter = usize;
/// Dense 0-based candidate index.
pub type Candidate = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElectionError {
    #[error("an election needs at least one voter")]
    NoVoters,
    #[error("an election needs at least one candidate")]
    NoCandidates,
    #[error("ranking of voter {voter}: {reason}")]
    InvalidRanking { voter: Voter, reason: String },
    #[error("voter {0} does not exist")]
    UnknownVoter(Voter),
    #[error("candidate {0} does not exist")]
    UnknownCandidate(Candidate),
    #[error("bottom-among query on an empty candidate set")]
    EmptyCandidateSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader(&'static str),
    InvalidNumber(String),
    /// A ballot lists the same candidate twice.
    DuplicateCandidate(Candidate),
    /// A ballot omits a candidate.
    MissingCandidate(Candidate),
    CandidateOutOfRange(Candidate),
    /// The header disagrees with the number of ballot lines.
    CountMismatch {
        expected: usize,
        found: usize,
    },
    /// Tie notation (`=`, `{`, `}`) is not part of the format.
    Tie,
    EmptyElection,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader(what) => write!(f, "missing {what} header"),
            ParseErrorKind::InvalidNumber(tok) => write!(f, "`{tok}` is not a non-negative integer"),
            ParseErrorKind::DuplicateCandidate(c) => write!(f, "candidate {c} appears twice"),
            ParseErrorKind::MissingCandidate(c) => write!(f, "candidate {c} is missing"),
            ParseErrorKind::CandidateOutOfRange(c) => write!(f, "candidate {c} is out of range"),
            ParseErrorKind::CountMismatch { expected, found } => {
                write!(f, "header declares {expected} ballots, found {found}")
            }
            ParseErrorKind::Tie => write!(f, "ties are not allowed in rankings"),
            ParseErrorKind::EmptyElection => write!(f, "voter and candidate counts must be positive"),
        }
    }
}

/// Ballot file error, pinned to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// Voters, candidates and one strict ranking per voter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Election {
    num_candidates: usize,
    rankings: Vec<Vec<Candidate>>,
    /// `positions[v][c]` is the rank of `c` in `v`'s ballot, 0 = top.
    positions: Vec<Vec<usize>>,
}

impl Election {
    /// Builds an election from most-preferred-first rankings.
    pub fn new(num_candidates: usize, rankings: Vec<Vec<Candidate>>) -> Result<Self, ElectionError> {
        if num_candidates == 0 {
            return Err(ElectionError::NoCandidates);
        }
        if rankings.is_empty() {
            return Err(ElectionError::NoVoters);
        }
        let mut positions = Vec::with_capacity(rankings.len());
        for (voter, ranking) in rankings.iter().enumerate() {
            let invalid = |reason: String| ElectionError::InvalidRanking { voter, reason };
            if ranking.len() != num_candidates {
                return Err(invalid(format!(
                    "expected {num_candidates} candidates, found {}",
                    ranking.len()
                )));
            }
            let mut pos = vec![usize::MAX; num_candidates];
            for (rank, &c) in ranking.iter().enumerate() {
                if c >= num_candidates {
                    return Err(invalid(format!("candidate {c} is out of range")));
                }
                if pos[c] != usize::MAX {
                    return Err(invalid(format!("candidate {c} appears twice")));
                }
                pos[c] = rank;
            }
            positions.push(pos);
        }
        Ok(Election {
            num_candidates,
            rankings,
            positions,
        })
    }

    pub fn num_voters(&self) -> usize {
        self.rankings.len()
    }

    pub fn num_candidates(&self) -> usize {
        self.num_candidates
    }

    pub fn rankings(&self) -> &[Vec<Candidate>] {
        &self.rankings
    }

    pub fn ranking(&self, v: Voter) -> &[Candidate] {
        &self.rankings[v]
    }

    /// Rank of `c` on `v`'s ballot (0 = top choice).
    pub fn position(&self, v: Voter, c: Candidate) -> usize {
        self.positions[v][c]
    }

    /// `a ≻_v b`.
    pub fn prefers(&self, v: Voter, a: Candidate, b: Candidate) -> bool {
        self.positions[v][a] < self.positions[v][b]
    }

    /// `a ⪰_v b`.
    pub fn weakly_prefers(&self, v: Voter, a: Candidate, b: Candidate) -> bool {
        self.positions[v][a] <= self.positions[v][b]
    }

    /// Top query.
    pub fn top(&self, v: Voter) -> Candidate {
        self.rankings[v][0]
    }

    pub fn bottom(&self, v: Voter) -> Candidate {
        self.rankings[v][self.num_candidates - 1]
    }

    /// Bottom-among query: the member of `set` that `v` ranks last.
    pub fn bottom_among(&self, v: Voter, set: &[Candidate]) -> Result<Candidate, ElectionError> {
        if v >= self.num_voters() {
            return Err(ElectionError::UnknownVoter(v));
        }
        if let Some(&c) = set.iter().find(|&&c| c >= self.num_candidates) {
            return Err(ElectionError::UnknownCandidate(c));
        }
        set.iter()
            .copied()
            .max_by_key(|&c| self.positions[v][c])
            .ok_or(ElectionError::EmptyCandidateSet)
    }

    /// Number of first-place votes per candidate.
    pub fn plurality_scores(&self) -> Vec<usize> {
        let mut scores = vec![0; self.num_candidates];
        for ranking in &self.rankings {
            scores[ranking[0]] += 1;
        }
        scores
    }

    /// Parses the ballot file format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let last_line = text.lines().count().max(1);

        let mut header = |what: &'static str| -> Result<(usize, usize), ParseError> {
            let (line, body) = lines.next().ok_or(ParseError {
                line: last_line,
                kind: ParseErrorKind::MissingHeader(what),
            })?;
            body.parse::<usize>().map(|v| (line, v)).map_err(|_| ParseError {
                line,
                kind: ParseErrorKind::InvalidNumber(body.to_string()),
            })
        };
        let (m_line, m) = header("candidate count")?;
        let (n_line, n) = header("voter count")?;
        if m == 0 {
            return Err(ParseError {
                line: m_line,
                kind: ParseErrorKind::EmptyElection,
            });
        }
        if n == 0 {
            return Err(ParseError {
                line: n_line,
                kind: ParseErrorKind::EmptyElection,
            });
        }

        let mut rankings = Vec::with_capacity(n);
        for (line, body) in lines {
            if rankings.len() == n {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::CountMismatch {
                        expected: n,
                        found: n + 1,
                    },
                });
            }
            rankings.push(parse_ballot(line, body, m)?);
        }
        if rankings.len() != n {
            return Err(ParseError {
                line: last_line,
                kind: ParseErrorKind::CountMismatch {
                    expected: n,
                    found: rankings.len(),
                },
            });
        }
        Ok(Election::new(m, rankings).expect("ballots validated during parsing"))
    }

    /// Writes the ballot file format; `parse(to_ballot_string())` is the identity.
    pub fn to_ballot_string(&self) -> String {
        let mut out = format!("{}\n{}\n", self.num_candidates, self.num_voters());
        for ranking in &self.rankings {
            let line: Vec<String> = ranking.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

fn parse_ballot(line: usize, body: &str, m: usize) -> Result<Vec<Candidate>, ParseError> {
    let err = |kind| ParseError { line, kind };
    if body.contains(['=', '{', '}']) {
        return Err(err(ParseErrorKind::Tie));
    }
    let mut seen = vec![false; m];
    let mut ranking = Vec::with_capacity(m);
    for token in body.split(',') {
        let token = token.trim();
        let c: Candidate = token
            .parse()
            .map_err(|_| err(ParseErrorKind::InvalidNumber(token.to_string())))?;
        if c >= m {
            return Err(err(ParseErrorKind::CandidateOutOfRange(c)));
        }
        if seen[c] {
            return Err(err(ParseErrorKind::DuplicateCandidate(c)));
        }
        seen[c] = true;
        ranking.push(c);
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(err(ParseErrorKind::MissingCandidate(missing)));
    }
    Ok(ranking)
}
