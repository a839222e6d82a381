"""A small imperative language where programs ask the user to choose.

kchoose offers numbered branches, mchoose labeled ones, read takes a value
from the keyboard; execution follows numbered proof rules and can be traced,
scripted, run on a console, or served over a JSON wire protocol.
"""

from .channels import (
    ChannelError,
    ChannelPolicy,
    ChoiceOption,
    ChoiceOutOfRange,
    ChoiceRequest,
    ConsoleChannel,
    InputExhausted,
    InteractionChannel,
    REPROMPT,
    STRICT,
    ScriptedChannel,
)
from .evaluator import (
    BadInputToken,
    EvalError,
    FailReason,
    Failure,
    Outcome,
    Program,
    Store,
    Success,
    TraceEntry,
    eval_expr,
    execute,
    load_program,
    parse_kbd_token,
    resolve_call,
    trace_line,
    update_store,
)
from .parser import ParseError, Token, parse_goal, parse_program, tokenize
from .session import (
    CancelAction,
    ChoiceAction,
    InputAction,
    LoadAction,
    ProtocolError,
    SessionChannel,
    StreamTransport,
    decode_action,
    encode_event,
    handle_session,
    serve_session,
)
from .syntax import (
    Assign,
    BinOp,
    Call,
    Expr,
    GStmt,
    Ident,
    IntLit,
    IntVal,
    KChoose,
    MChoose,
    Print,
    ProcDef,
    Read,
    Seq,
    StrLit,
    StrVal,
    SymVal,
    TrueStmt,
    Value,
    free_idents,
    pretty_expr,
    pretty_print,
    render_value,
    substitute,
    value_literal,
)

__version__ = "0.1.0"
