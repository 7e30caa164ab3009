// Message types for the weightsim session socket. The client never invents
// state: it sends inputs, the server sends snapshots, and rendering reads
// snapshots only.

export type GameName = "arrange" | "balance";

export type ActionName =
    | "grab" | "release" | "submit" | "reset" | "restart" | "giveup";

export type OpenMessage = {
    type: "open";
    game: GameName;
    seed: number;
    cd: boolean;
    auto_tick?: boolean;
    tick_ms?: number;
};

export type ForceMessage = { type: "force"; thumb_adc: number; palm_adc: number };
export type HandMessage = { type: "hand"; y_m: number; x_m: number };
export type ActionMessage = {
    type: "action";
    name: ActionName;
    cube?: number;
    target?: string;
};
export type TickMessage = { type: "tick"; n?: number };

export type ClientMessage =
    | OpenMessage | ForceMessage | HandMessage | ActionMessage | TickMessage;

export type CubeView = {
    id: number;
    x: number;
    display_y: number;
    phase: "free" | "held_resting" | "lifting" | "falling";
    location: string;
};

export type Snapshot = {
    type: "state";
    tick: number;
    screen: "playing" | "incorrect" | "success";
    attempts: number;
    gave_up: boolean;
    gesture: "none" | "pinch" | "grip";
    cubes: CubeView[];
    ratio?: number;
    tilt?: "level" | "left_down" | "right_down";
};

export type OpenedMessage = {
    type: "opened";
    session: string;
    game: GameName;
    seed: number;
    cd: boolean;
    tick_ms: number;
    auto_tick: boolean;
    zones: Record<string, number>;
};

export type ErrorMessage = { type: "error"; reason: string };

export type ServerMessage = Snapshot | OpenedMessage | ErrorMessage;

export function isSnapshot(msg: unknown): msg is Snapshot {
    const m = msg as Snapshot;
    return (
        typeof m === "object" && m !== null && m.type === "state" &&
        typeof m.tick === "number" && Array.isArray(m.cubes) &&
        typeof m.screen === "string" && typeof m.attempts === "number"
    );
}

export function isOpened(msg: unknown): msg is OpenedMessage {
    const m = msg as OpenedMessage;
    return typeof m === "object" && m !== null && m.type === "opened";
}

export function isError(msg: unknown): msg is ErrorMessage {
    const m = msg as ErrorMessage;
    return typeof m === "object" && m !== null && m.type === "error";
}

// One scripted UI operation. Headless equivalence scripts are written in
// these terms and must map 1:1 onto wire messages, so both the recorded
// reference client and this UI produce identical streams.
export type ScriptOp =
    | { op: "hand"; x: number; y: number }
    | { op: "sliders"; thumb: number; palm: number }
    | { op: "click"; name: ActionName; cube?: number; target?: string }
    | { op: "tick"; n?: number };

export function opToMessage(op: ScriptOp): ClientMessage {
    switch (op.op) {
        case "hand":
            return { type: "hand", y_m: op.y, x_m: op.x };
        case "sliders":
            return { type: "force", thumb_adc: op.thumb, palm_adc: op.palm };
        case "click": {
            const msg: ActionMessage = { type: "action", name: op.name };
            if (op.cube !== undefined) msg.cube = op.cube;
            if (op.target !== undefined) msg.target = op.target;
            return msg;
        }
        case "tick":
            return op.n === undefined ? { type: "tick" } : { type: "tick", n: op.n };
    }
}
