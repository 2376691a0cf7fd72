use std::fmt::Write;

use serde_json::{json, Value};
use subword_core::clusters::{type_a_diagonal_map, Rotation};
use subword_core::hopf::chip::chip_to_gems;
use subword_core::json::{roots_to_json, tensor_to_json, vector_to_json, FlatJson, InstanceJson, KeyJson};
use subword_core::{
    antipode, cluster_instance, coproduct, product, rotate, takeuchi_antipode, Facet, FlipOutcome, HopfVector,
    SubwordInstance,
};

use crate::input::{key_of, parse_facet, parse_value, read_json, system, word, InstanceArgs, Parsed};
use crate::{verify, CliError, Command, Method, Output};

pub fn run(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Facets(args) => facets(args),
        Command::Rootfn(args) => rootfn(args),
        Command::Flip { args, position } => flip(args, *position),
        Command::Flats(args) => flats(args),
        Command::Restrict { args, flat } => restrict(args, flat),
        Command::Coproduct(args) => coproduct_cmd(args),
        Command::Antipode { args, method } => antipode_cmd(args, *method),
        Command::Product { inputs } => product_cmd(inputs),
        Command::Cluster { ty, c } => cluster(ty, c),
        Command::Rotate { args, c, times } => rotate_cmd(args, c.as_deref(), *times),
        Command::Verify { suite, args, c, size } => verify::run(*suite, args, c.as_deref(), *size),
        Command::Chip { args, iterations } => chip(args, *iterations),
        Command::Corpus { dir } => {
            let written = crate::corpus::emit(dir)?;
            let mut text = String::new();
            for name in &written {
                writeln!(text, "wrote {}", dir.join(name).display()).unwrap();
            }
            Ok(ok(json!({ "dir": dir.display().to_string(), "files": written }), text))
        }
    }
}

fn ok(json: Value, text: String) -> Output {
    Output { json, text, ok: true }
}

fn facet_lists(facets: &[Facet]) -> Vec<Vec<usize>> {
    facets.iter().map(Facet::to_one_based).collect()
}

fn facets(args: &InstanceArgs) -> Result<Output, CliError> {
    let (inst, _) = args.instance()?;
    let list = inst.enumerate_facets();
    let mut text = format!("{} facets", list.facets.len());
    if list.void {
        text.push_str(" (void complex)");
    }
    text.push('\n');
    for f in &list.facets {
        writeln!(text, "{f}").unwrap();
    }
    Ok(ok(
        json!({ "count": list.facets.len(), "void": list.void, "facets": facet_lists(&list.facets) }),
        text,
    ))
}

fn rootfn(args: &InstanceArgs) -> Result<Output, CliError> {
    let t = args.tuple()?;
    let mut text = String::new();
    for (k, r) in t.roots().iter().enumerate() {
        let mark = if t.facet().contains(k) { "*" } else { " " };
        writeln!(text, "{:>3}{mark} {r}", k + 1).unwrap();
    }
    Ok(ok(
        json!({ "facet": t.facet().to_one_based(), "roots": roots_to_json(t.roots()) }),
        text,
    ))
}

fn flip(args: &InstanceArgs, position: usize) -> Result<Output, CliError> {
    let (inst, facet) = args.instance()?;
    let facet = facet.ok_or_else(|| CliError::Parse("a facet is required".into()))?;
    if position == 0 {
        return Err(CliError::Parse("positions are 1-based".into()));
    }
    Ok(match inst.flip(&facet, position - 1)? {
        FlipOutcome::Flipped { facet: new, partner } => ok(
            json!({ "flippable": true, "facet": new.to_one_based(), "partner": partner + 1 }),
            format!("{facet} -> {new} (position {position} exchanged with {})\n", partner + 1),
        ),
        FlipOutcome::NonFlippable => ok(
            json!({ "flippable": false }),
            format!("position {position} of {facet} is not flippable\n"),
        ),
    })
}

fn flats(args: &InstanceArgs) -> Result<Output, CliError> {
    let t = args.tuple()?;
    let flats = t.enumerate_flats();
    let mut text = format!("{} flats\n", flats.len());
    let mut rows = vec![];
    for f in &flats {
        let irreducible = t.is_irreducible_flat(f);
        writeln!(text, "dim {} J={f}{}", f.dim(), if irreducible { "" } else { " (reducible)" }).unwrap();
        let mut v = serde_json::to_value(FlatJson::from_flat(f)).expect("flat serializes");
        v["irreducible"] = json!(irreducible);
        rows.push(v);
    }
    Ok(ok(json!({ "count": flats.len(), "flats": rows }), text))
}

fn restrict(args: &InstanceArgs, flat: &str) -> Result<Output, CliError> {
    let t = args.tuple()?;
    let f = t.flat_from_positions(&parse_facet(flat)?.0)?;
    let r = t.restrict(&f)?;
    let report = t.verify_decomposition_theorem(&f);
    let inst = r.tuple.instance();
    let pi = inst.system().reduced_word(inst.pi());
    let text = format!(
        "Q_F = {}\npi_F = {}\nI_F = {}\nbar I_F = {}\nroots = {}\ndecomposition theorem: {}\n",
        inst.word(),
        pi,
        r.tuple.facet(),
        r.bar_facet(),
        r.tuple.roots().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
        report.message.as_deref().unwrap_or("holds"),
    );
    Ok(Output {
        json: json!({
            "J": f.to_one_based(),
            "restricted": InstanceJson::from_instance(inst, Some(r.tuple.facet())),
            "roots": roots_to_json(r.tuple.roots()),
            "bar_facet": r.bar_facet().to_one_based(),
            "origin": r.origin.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "decomposition_theorem": report.passed,
        }),
        text,
        ok: report.passed,
    })
}

fn coproduct_cmd(args: &InstanceArgs) -> Result<Output, CliError> {
    let k = args.key()?;
    let t = coproduct(&HopfVector::from_key(k.clone()))?;
    let mut text = format!("Δ {k} =\n");
    for (keys, c) in t.terms() {
        writeln!(text, "  ({c}) {} ⊗ {}", keys[0], keys[1]).unwrap();
    }
    Ok(ok(json!({ "key": KeyJson::from_key(&k), "terms": tensor_to_json(&t) }), text))
}

fn render_vector(text: &mut String, label: &str, v: &HopfVector) {
    writeln!(text, "{label} ({} terms):", v.len()).unwrap();
    for (k, c) in v.terms() {
        writeln!(text, "  ({c}) {k}").unwrap();
    }
}

fn antipode_cmd(args: &InstanceArgs, method: Method) -> Result<Output, CliError> {
    let k = args.key()?;
    let x = HopfVector::from_key(k.clone());
    let mut text = format!("S {k}\n");
    let mut out = json!({ "key": KeyJson::from_key(&k) });
    let mut agree = true;
    let t = matches!(method, Method::Takeuchi | Method::Both).then(|| takeuchi_antipode(&x)).transpose()?;
    let f = matches!(method, Method::Free | Method::Both).then(|| antipode(&x)).transpose()?;
    if let Some(t) = &t {
        render_vector(&mut text, "takeuchi", t);
        out["takeuchi"] = json!(vector_to_json(t));
    }
    if let Some(f) = &f {
        render_vector(&mut text, "cancellation-free", f);
        out["free"] = json!(vector_to_json(f));
    }
    if let (Some(t), Some(f)) = (&t, &f) {
        agree = t == f;
        writeln!(text, "agree: {agree}").unwrap();
        out["agree"] = json!(agree);
    }
    Ok(Output { json: out, text, ok: agree })
}

fn product_cmd(inputs: &[String]) -> Result<Output, CliError> {
    let mut acc = HopfVector::unit();
    for arg in inputs {
        let k = match parse_value(read_json(arg)?)? {
            Parsed::Key(k) => k,
            Parsed::Instance(inst, facet) => {
                let facet = facet.ok_or_else(|| CliError::Parse(format!("{arg}: a facet is required")))?;
                key_of(&subword_core::Tuple::new(inst, facet)?)?
            }
        };
        acc = product(&acc, &HopfVector::from_key(k))?;
    }
    let text = format!("{acc}\n");
    Ok(ok(json!({ "terms": vector_to_json(&acc) }), text))
}

fn cluster(ty: &str, c: &str) -> Result<Output, CliError> {
    let sys = system(ty)?;
    let c = word(&sys, c)?;
    let cl = cluster_instance(&sys, &c)?;
    let facets = cl.instance.facets();
    let blocks = cl.blocks();
    let mut text = format!(
        "c w0(c) = {}\nQ = {}\n{} facets\n",
        blocks.display_blocks(),
        cl.instance.word(),
        facets.len()
    );
    let mut out = json!({
        "c": cl.c.to_one_based(),
        "w0c": cl.w0c.word().to_one_based(),
        "word": cl.instance.word().to_one_based(),
        "blocks": blocks.display_blocks(),
        "facet_count": facets.len(),
        "facets": facet_lists(&facets),
    });
    if let Ok(diagonals) = type_a_diagonal_map(&cl) {
        let labels: Vec<String> = diagonals.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        writeln!(text, "diagonals: {}", labels.join(" ")).unwrap();
        out["diagonals"] = json!(diagonals.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>());
    }
    Ok(ok(out, text))
}

fn rotate_cmd(args: &InstanceArgs, c: Option<&str>, times: usize) -> Result<Output, CliError> {
    let (mut inst, mut facet): (SubwordInstance, Option<Facet>) = match c {
        Some(c) => {
            let ty = args
                .ty
                .as_deref()
                .ok_or_else(|| CliError::Parse("--c needs --type".into()))?;
            let sys = system(ty)?;
            let c = word(&sys, c)?;
            let facet = args.facet.as_deref().map(parse_facet).transpose()?;
            (cluster_instance(&sys, &c)?.instance, facet)
        }
        None => args.instance()?,
    };
    let mut text = String::new();
    let mut steps = vec![];
    for step in 1..=times {
        let Rotation { instance, facet: f, .. } = rotate(&inst, facet.as_ref(), None)?;
        inst = instance;
        facet = f;
        write!(text, "{step}: Q = {}", inst.word()).unwrap();
        if let Some(f) = &facet {
            write!(text, " I = {f}").unwrap();
        }
        text.push('\n');
        steps.push(json!({
            "word": inst.word().to_one_based(),
            "facet": facet.as_ref().map(Facet::to_one_based),
        }));
    }
    Ok(ok(json!({ "steps": steps }), text))
}

fn chip(args: &InstanceArgs, iterations: usize) -> Result<Output, CliError> {
    let k = args.key()?;
    let report = chip_to_gems(&HopfVector::from_key(k.clone()), iterations, true)?;
    let mut text = format!("chipping {k}\n");
    match report.support_stable_at {
        Some(s) => writeln!(text, "support stable at iteration {s}").unwrap(),
        None => writeln!(text, "support not stable within {iterations} iterations").unwrap(),
    }
    writeln!(text, "stable states ({}), all gems: {}", report.stable_states.len(), report.stable_states_are_gems).unwrap();
    for s in &report.stable_states {
        writeln!(text, "  {s}").unwrap();
    }
    render_vector(&mut text, "limit", &report.limit);
    match report.literal_gems_only_at {
        Some(s) => writeln!(text, "support is gems only from iteration {s}").unwrap(),
        None => writeln!(text, "support never gems only within {iterations} iterations").unwrap(),
    }
    Ok(Output {
        json: json!({
            "key": KeyJson::from_key(&k),
            "support_stable_at": report.support_stable_at,
            "stable_states": report.stable_states.iter().map(KeyJson::from_key).collect::<Vec<_>>(),
            "stable_states_are_gems": report.stable_states_are_gems,
            "limit": vector_to_json(&report.limit),
            "limit_is_gems_only": report.limit_is_gems_only,
            "literal_gems_only_at": report.literal_gems_only_at,
        }),
        text,
        ok: report.stabilizes_on_gems(),
    })
}
