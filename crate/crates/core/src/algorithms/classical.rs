use crate::oracles::ClassicalOracle;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalResult {
    pub answer: usize,
    pub queries: u64,
}

/// Probe records `0, 1, 2, …` with `b = 0`. After `N - 1` misses the last
/// record must be the answer and is returned without a query.
pub fn classical_naive_search<O: ClassicalOracle + ?Sized>(oracle: &mut O) -> Result<ClassicalResult> {
    let records = 1usize << oracle.width();
    let start = oracle.ledger().classical_queries;
    let mut answer = records - 1;
    for x in 0..records - 1 {
        if oracle.query(x, false)? {
            answer = x;
            break;
        }
    }
    Ok(ClassicalResult {
        answer,
        queries: oracle.ledger().classical_queries - start,
    })
}

/// Query each unit string; the response to the one selecting qubit `i` is
/// bit `i` of the answer (qubit 0 is the most significant bit).
pub fn classical_sophisticated_search<O: ClassicalOracle + ?Sized>(
    oracle: &mut O,
) -> Result<ClassicalResult> {
    let n = oracle.width();
    let start = oracle.ledger().classical_queries;
    let mut answer = 0;
    for i in 0..n {
        let unit = 1usize << (n - 1 - i);
        if oracle.query(unit, false)? {
            answer |= unit;
        }
    }
    Ok(ClassicalResult {
        answer,
        queries: oracle.ledger().classical_queries - start,
    })
}
