//! Small reference presentations used throughout the tests, benches and docs.

use crate::presentation::{parse_presentation, Presentation};

/// `⟨a,b,c,d | ab = cd⟩`
pub const P1_TEXT: &str = "generators: a b c d\nrelation: a b = c d\n";
/// `⟨a,b,e,f | aeb = afb⟩`
pub const P2_TEXT: &str = "generators: a b e f\nrelation: a e b = a f b\n";
/// `⟨a,b,e,f | abe = fab⟩`
pub const P4_TEXT: &str = "generators: a b e f\nrelation: a b e = f a b\n";
/// `⟨a,b,c,d | abc = dcd⟩`, which is C(3) but not C(4).
pub const NOT_C4_TEXT: &str = "generators: a b c d\nrelation: a b c = d c d\n";

pub fn p1() -> Presentation {
    parse_presentation(P1_TEXT).expect("preset")
}

pub fn p2() -> Presentation {
    parse_presentation(P2_TEXT).expect("preset")
}

pub fn p4() -> Presentation {
    parse_presentation(P4_TEXT).expect("preset")
}

pub fn not_c4() -> Presentation {
    parse_presentation(NOT_C4_TEXT).expect("preset")
}
