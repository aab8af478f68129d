//! Stack-based reduction with boundary cancellation, and the canonical form.
//!
//! Every cancellation in a product of two reduced words of this class pairs
//! a final segment of the left word with an initial segment of the right
//! one. At a junction that means one of:
//!
//! * a last letter meets its inverse as the next first letter;
//! * `R(s,d,ε)` meets `T(s,d,−ε)`: the whole pair cancels letter by letter;
//! * `T(s,d,ε)` meets `R(s',d,−ε)` with `s ≡ s' (mod d)`: the two tails
//!   cancel from the accumulation point inward, leaving finite remainders.

use std::collections::VecDeque;

use super::{Letter, Segment, Tail, Word};

/// Whether one unit of cancellation is possible between `left` and `right`.
pub(crate) fn junction_cancellable(left: &Segment, right: &Segment) -> bool {
    match (left.last_letter(), right.first_letter()) {
        (Some(l), Some(r)) => l.is_inverse_of(r),
        (None, None) => match (left, right) {
            (Segment::Forward(a), Segment::Backward(b)) => mirror_compatible(a, b),
            _ => false,
        },
        _ => false,
    }
}

fn mirror_compatible(a: &Tail, b: &Tail) -> bool {
    a.stride == b.stride && a.sign != b.sign && a.start % a.stride == b.start % b.stride
}

fn drop_last(seg: Segment) -> Option<Segment> {
    match seg {
        Segment::Finite(mut l) => {
            l.pop();
            (!l.is_empty()).then_some(Segment::Finite(l))
        }
        Segment::Backward(t) => Some(Segment::Backward(t.advance(1))),
        Segment::Forward(_) => unreachable!("forward tails have no last letter"),
    }
}

fn drop_first(seg: Segment) -> Option<Segment> {
    match seg {
        Segment::Finite(mut l) => {
            l.remove(0);
            (!l.is_empty()).then_some(Segment::Finite(l))
        }
        Segment::Forward(t) => Some(Segment::Forward(t.advance(1))),
        Segment::Backward(_) => unreachable!("backward tails have no first letter"),
    }
}

/// Performs one unit of cancellation between the top of `left` and the
/// front of `right`. Returns false when nothing cancels.
pub(crate) fn cancel_step(left: &mut Vec<Segment>, right: &mut VecDeque<Segment>) -> bool {
    let (Some(l), Some(r)) = (left.last(), right.front()) else {
        return false;
    };
    if !junction_cancellable(l, r) {
        return false;
    }
    let l = left.pop().expect("nonempty");
    let r = right.pop_front().expect("nonempty");
    match (l, r) {
        (Segment::Backward(a), Segment::Forward(b)) if a.start == b.start && a.stride == b.stride => {
            // a_s^ε a_s^{-ε}, a_{s+d}^ε a_{s+d}^{-ε}, … all cancel
        }
        (Segment::Forward(a), Segment::Backward(b)) => {
            let top = a.start.max(b.start);
            let keep_left = (top - a.start) / a.stride;
            let keep_right = (top - b.start) / b.stride;
            if keep_left > 0 {
                left.push(Segment::Finite(a.take(keep_left)));
            }
            if keep_right > 0 {
                let mut letters = b.take(keep_right);
                letters.reverse();
                right.push_front(Segment::Finite(letters));
            }
        }
        (l, r) => {
            if let Some(l) = drop_last(l) {
                left.push(l);
            }
            if let Some(r) = drop_first(r) {
                right.push_front(r);
            }
        }
    }
    true
}

fn push_merged(stack: &mut Vec<Segment>, seg: Segment) {
    if let (Some(Segment::Finite(top)), Segment::Finite(more)) = (stack.last_mut(), &seg) {
        top.extend_from_slice(more);
        return;
    }
    stack.push(seg);
}

fn push(stack: &mut Vec<Segment>, seg: Segment) {
    let mut incoming = VecDeque::from([seg]);
    while cancel_step(stack, &mut incoming) {}
    for s in incoming {
        push_merged(stack, s);
    }
}

pub(crate) fn reduce(w: &Word) -> Word {
    let mut stack: Vec<Segment> = Vec::new();
    for seg in w.segments() {
        match seg {
            Segment::Finite(letters) => {
                for &x in letters {
                    push(&mut stack, Segment::Finite(vec![x]));
                }
            }
            tail => push(&mut stack, tail.clone()),
        }
    }
    Word::from_raw(canonicalize(stack))
}

/// Canonical presentation of an already reduced segment list: adjacent
/// finite runs merged, forward tails extended leftward as far as the
/// preceding letters allow (including the last letter of a backward tail),
/// then backward tails extended rightward over following finite letters.
pub(crate) fn canonicalize(segments: Vec<Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    for seg in segments {
        match seg {
            Segment::Finite(l) if l.is_empty() => {}
            Segment::Forward(mut t) => {
                while t.start > t.stride {
                    let want = Letter::new(t.start - t.stride, t.sign);
                    match out.last_mut() {
                        Some(Segment::Finite(l)) if l.last() == Some(&want) => {
                            l.pop();
                            if l.is_empty() {
                                out.pop();
                            }
                        }
                        Some(Segment::Backward(b)) if b.letter(0) == want => {
                            *b = b.advance(1);
                        }
                        _ => break,
                    }
                    t.start -= t.stride;
                }
                out.push(Segment::Forward(t));
            }
            other => push_merged(&mut out, other),
        }
    }
    let mut result: Vec<Segment> = Vec::new();
    let mut iter = out.into_iter().peekable();
    while let Some(seg) = iter.next() {
        match seg {
            Segment::Backward(mut t) => {
                if let Some(Segment::Finite(next)) = iter.peek_mut() {
                    let mut taken = 0;
                    while taken < next.len() && t.start > t.stride {
                        let want = Letter::new(t.start - t.stride, t.sign);
                        if next[taken] != want {
                            break;
                        }
                        t.start -= t.stride;
                        taken += 1;
                    }
                    next.drain(..taken);
                    if next.is_empty() {
                        iter.next();
                    }
                }
                result.push(Segment::Backward(t));
            }
            other => push_merged(&mut result, other),
        }
    }
    result
}

/// Cancels reduced `left` against reduced `right` at their junction.
///
/// Returns `(left', right')` with `left = left'·c` and `right = c⁻¹·right'`
/// for the cancelled part `c`, so that `left'·right'` is the reduced product.
pub fn cancel_junction(left: &Word, right: &Word) -> (Word, Word) {
    let mut l: Vec<Segment> = left.reduce().into_segments();
    let mut r: VecDeque<Segment> = right.reduce().into_segments().into();
    while cancel_step(&mut l, &mut r) {}
    (
        Word::from_raw(canonicalize(l)),
        Word::from_raw(canonicalize(r.into_iter().collect())),
    )
}
