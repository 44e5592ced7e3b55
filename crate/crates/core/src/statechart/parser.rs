use std::collections::HashMap;

use crate::error::{ParseError, ParseErrorKind as Kind};
use crate::interface::ServiceName;

use super::{is_valid_guard, is_valid_param, ActionEmission, Statechart, Transition};

/// Character cursor over one source line, tracking 1-based columns.
struct Cursor<'a> {
    line: &'a str,
    lineno: usize,
    pos: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Cursor<'a> {
    fn new(line: &'a str, lineno: usize) -> Self {
        Self {
            line,
            lineno,
            pos: 0,
        }
    }

    fn column_at(&self, pos: usize) -> usize {
        self.line[..pos].chars().count() + 1
    }

    fn error_at(&self, pos: usize, kind: Kind, message: impl Into<String>) -> ParseError {
        ParseError::new(kind, self.lineno, self.column_at(pos), message)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, Kind::Syntax, message)
    }

    fn rest(&self) -> &'a str {
        &self.line[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
        self.pos > start
    }

    fn at_end(&self) -> bool {
        self.pos == self.line.len()
    }

    /// Reads an identifier, returning it with its start offset.
    fn ident(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        let start = self.pos;
        let len: usize = self
            .rest()
            .chars()
            .take_while(|c| is_ident_char(*c))
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return Err(self.error(format!("expected {what}")));
        }
        self.pos += len;
        Ok((start, &self.line[start..self.pos]))
    }

    fn service(&mut self, what: &str) -> Result<ServiceName, ParseError> {
        let (_, name) = self.ident(what)?;
        Ok(ServiceName::new(name).expect("identifier chars only"))
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    /// Reads text up to (not including) the first of `stops`.
    fn until(&mut self, stops: &[char]) -> (usize, &'a str) {
        let start = self.pos;
        let len = self.rest().find(stops).unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.line[start..self.pos])
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

struct Located<T> {
    value: T,
    line: usize,
    column: usize,
}

#[derive(PartialEq, PartialOrd)]
enum Clause {
    On,
    Guard,
    Do,
}

fn parse_transition(cur: &mut Cursor<'_>) -> Result<(Transition, [(usize, usize); 2]), ParseError> {
    cur.skip_ws();
    let (src_pos, source) = cur.ident("source state")?;
    cur.skip_ws();
    cur.expect("->")?;
    cur.skip_ws();
    let (dst_pos, target) = cur.ident("target state")?;
    let mut transition = Transition::new(source, target);
    let mut last: Option<Clause> = None;

    loop {
        let had_ws = cur.skip_ws();
        if cur.at_end() {
            break;
        }
        if !had_ws {
            return Err(cur.error("expected whitespace before clause"));
        }
        let (kw_pos, keyword) = cur.ident("`on`, `guard` or `do`")?;
        let clause = match keyword {
            "on" => Clause::On,
            "guard" => Clause::Guard,
            "do" => Clause::Do,
            other => {
                return Err(cur.error_at(
                    kw_pos,
                    Kind::Syntax,
                    format!("unexpected `{other}`, expected `on`, `guard` or `do`"),
                ))
            }
        };
        if let Some(prev) = &last {
            if clause < *prev || (clause == *prev && clause != Clause::Do) {
                return Err(cur.error_at(
                    kw_pos,
                    Kind::Syntax,
                    format!("misplaced `{keyword}` clause (order is on, guard, do...)"),
                ));
            }
        }
        if !cur.skip_ws() && clause != Clause::Guard {
            return Err(cur.error(format!("expected whitespace after `{keyword}`")));
        }
        match clause {
            Clause::On => transition.event = Some(cur.service("event name")?),
            Clause::Guard => {
                cur.skip_ws();
                cur.expect("[")?;
                let (text_pos, text) = cur.until(&['[', ']']);
                if cur.peek() != Some(']') {
                    return Err(cur.error("expected `]` closing the guard"));
                }
                cur.pos += 1;
                let text = text.trim();
                if !is_valid_guard(text) {
                    return Err(cur.error_at(text_pos, Kind::Syntax, "empty guard"));
                }
                transition.guard = Some(text.to_owned());
            }
            Clause::Do => {
                let action = cur.service("action name")?;
                let mut params = Vec::new();
                if cur.peek() == Some('(') {
                    cur.pos += 1;
                    loop {
                        cur.skip_ws();
                        if params.is_empty() && cur.peek() == Some(')') {
                            break;
                        }
                        let (p_pos, raw) = cur.until(&[',', ')']);
                        let token = raw.trim();
                        if !is_valid_param(token) {
                            return Err(cur.error_at(
                                p_pos,
                                Kind::Syntax,
                                format!("invalid parameter {token:?}"),
                            ));
                        }
                        params.push(token.to_owned());
                        match cur.peek() {
                            Some(',') => cur.pos += 1,
                            Some(')') => break,
                            _ => return Err(cur.error("expected `,` or `)`")),
                        }
                    }
                    cur.pos += 1;
                }
                transition
                    .actions
                    .push(ActionEmission::with_params(action, params));
            }
        }
        last = Some(clause);
    }

    let positions = [
        (cur.lineno, cur.column_at(src_pos)),
        (cur.lineno, cur.column_at(dst_pos)),
    ];
    Ok((transition, positions))
}

/// Parses and validates one statechart document.
pub fn parse_statechart(text: &str) -> Result<Statechart, ParseError> {
    let mut component: Option<Located<String>> = None;
    let mut states: Vec<String> = Vec::new();
    let mut state_pos: HashMap<String, (usize, usize)> = HashMap::new();
    let mut initial: Option<Located<String>> = None;
    let mut transitions: Vec<(Transition, [(usize, usize); 2])> = Vec::new();
    let mut ended: Option<usize> = None;
    let mut last_line = 1;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = strip_comment(raw);
        let mut cur = Cursor::new(line, lineno);
        cur.skip_ws();
        if cur.at_end() {
            continue;
        }
        if ended.is_some() {
            return Err(cur.error("content after `end`"));
        }
        let (kw_pos, keyword) = cur.ident("a declaration").map_err(|e| ParseError {
            message: "expected a declaration keyword".into(),
            ..e
        })?;

        match keyword {
            "component" | "state" | "initial" => {
                if !cur.skip_ws() {
                    return Err(cur.error(format!("expected a name after `{keyword}`")));
                }
                let (name_pos, name) = cur.ident("an identifier")?;
                cur.skip_ws();
                if !cur.at_end() {
                    return Err(cur.error("unexpected trailing text"));
                }
                let column = cur.column_at(name_pos);
                let located = Located {
                    value: name.to_owned(),
                    line: lineno,
                    column,
                };
                match keyword {
                    "component" => {
                        if let Some(prev) = &component {
                            return Err(cur.error_at(
                                kw_pos,
                                Kind::DuplicateComponent,
                                format!(
                                    "second component header `{name}` (first `{}` on line {})",
                                    prev.value, prev.line
                                ),
                            ));
                        }
                        component = Some(located);
                    }
                    "state" => {
                        if state_pos.contains_key(name) {
                            return Err(cur.error_at(
                                name_pos,
                                Kind::DuplicateState,
                                format!("state `{name}` declared twice"),
                            ));
                        }
                        state_pos.insert(name.to_owned(), (lineno, column));
                        states.push(name.to_owned());
                    }
                    _ => {
                        if initial.is_some() {
                            return Err(cur.error_at(
                                kw_pos,
                                Kind::Syntax,
                                "initial state declared twice",
                            ));
                        }
                        initial = Some(located);
                    }
                }
            }
            "transition" => {
                if !cur.skip_ws() {
                    return Err(cur.error("expected a source state after `transition`"));
                }
                transitions.push(parse_transition(&mut cur)?);
            }
            "end" => {
                cur.skip_ws();
                if !cur.at_end() {
                    return Err(cur.error("unexpected trailing text"));
                }
                ended = Some(lineno);
            }
            other => {
                return Err(cur.error_at(
                    kw_pos,
                    Kind::Syntax,
                    format!("unknown declaration `{other}`"),
                ))
            }
        }
    }

    let component = component
        .ok_or_else(|| ParseError::new(Kind::Syntax, 1, 1, "missing `component` header"))?;
    let initial = initial.ok_or_else(|| {
        ParseError::new(
            Kind::MissingInitial,
            last_line,
            1,
            "no `initial` declaration",
        )
    })?;
    if !state_pos.contains_key(&initial.value) {
        return Err(ParseError::new(
            Kind::UnknownState,
            initial.line,
            initial.column,
            format!("initial state `{}` is not declared", initial.value),
        ));
    }
    for (t, positions) in &transitions {
        for (name, (line, column)) in [&t.source, &t.target].into_iter().zip(positions) {
            if !state_pos.contains_key(name) {
                return Err(ParseError::new(
                    Kind::UnknownState,
                    *line,
                    *column,
                    format!("state `{name}` is not declared"),
                ));
            }
        }
    }

    let transitions = transitions.into_iter().map(|(t, _)| t).collect();
    let chart =
        Statechart::new(component.value, states, initial.value, transitions).map_err(|e| {
            ParseError::new(
                Kind::Syntax,
                component.line,
                component.column,
                e.to_string(),
            )
        })?;
    Ok(chart)
}
