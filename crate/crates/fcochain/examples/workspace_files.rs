//! Driving the library from declarative workspace files, the same way the
//! `fcochain` binary does: declare entities in the text format, load with
//! validation, run commands, and reload what a command emitted.

use fcochain::cli::{execute_command, Options};
use fcochain::format::{load_workspace, ComplexEntry};

fn main() {
    let text = "\
# two-term complex over the Nakayama functor of the dual numbers
[algebra A]
builtin dual_numbers

[bimodule D]
algebra A
builtin dual

[functor F]
kind tensor
bimodule D

[module M]
algebra A
builtin regular

[complex C]
functor F
flavor left
window 0 1
term 0 M
term 1 M
";
    let ws = load_workspace(&[("inline.fc".to_string(), text.to_string())]).unwrap();
    println!("loaded workspace: {ws:?}");

    let report = execute_command(&ws, "validate", &["all".into()], &Options::default()).unwrap();
    print!("{}", report.render("text", false));

    // run the bridge and reload the emitted right-flavour complex
    let opts = Options {
        seed: 0,
        emit: true,
        window: None,
    };
    let report = execute_command(&ws, "bridge", &["C".into()], &opts).unwrap();
    print!("{}", report.render("text", false));
    let ws2 = load_workspace(&[("emitted.fc".into(), report.emitted[0].clone())]).unwrap();
    assert!(matches!(ws2.complexes["bridged"], ComplexEntry::Right(_)));
    println!("emitted complex reloaded and validated");

    // a deliberately broken workspace is rejected with a located error
    let broken = "\
[algebra K]
builtin ground_field

[bimodule R]
algebra K
builtin regular

[functor F]
kind tensor
bimodule R

[module M]
algebra K
builtin regular

[complex BAD]
functor F
flavor left
window 0 2
term 0 M
term 1 M
term 2 M
diff 0
1
diff 1
1
";
    let err = load_workspace(&[("broken.fc".into(), broken.into())]).unwrap_err();
    println!("broken workspace rejected: {err}");
}
