// Thin socket wrapper. A socket-like is injected so headless tests can run
// the client against a scripted fake; the browser passes a real WebSocket.

import {
    ClientMessage,
    GameName,
    OpenedMessage,
    ServerMessage,
    isError,
    isOpened,
    isSnapshot,
} from "./protocol.js";

export interface SocketLike {
    send(data: string): void;
    close(): void;
    set onmessage(handler: (event: { data: string }) => void);
    set onclose(handler: () => void);
}

export type ClientHandlers = {
    onOpened?: (msg: OpenedMessage) => void;
    onSnapshot?: (msg: ServerMessage) => void;
    onProtocolError?: (reason: string) => void;
    onDisconnect?: () => void;
};

export class GameClient {
    opened: OpenedMessage | null = null;

    constructor(private socket: SocketLike,
                private handlers: ClientHandlers = {}) {
        socket.onmessage = (event) => this.receive(event.data);
        socket.onclose = () => this.handlers.onDisconnect?.();
    }

    open(game: GameName, seed: number, cd: boolean, autoTick = true): void {
        this.sendMessage({ type: "open", game, seed, cd, auto_tick: autoTick });
    }

    sendMessage(msg: ClientMessage): void {
        this.socket.send(JSON.stringify(msg));
    }

    private receive(data: string): void {
        let msg: unknown;
        try {
            msg = JSON.parse(data);
        } catch {
            this.handlers.onSnapshot?.(
                { type: "error", reason: "unparseable server frame" });
            return;
        }
        if (isOpened(msg)) {
            this.opened = msg;
            this.handlers.onOpened?.(msg);
        } else if (isError(msg)) {
            this.handlers.onProtocolError?.(msg.reason);
        } else if (isSnapshot(msg)) {
            this.handlers.onSnapshot?.(msg);
        } else {
            this.handlers.onSnapshot?.(msg as ServerMessage);
        }
    }
}

export function sessionUrl(base: string): string {
    const scheme = base.startsWith("https") ? "wss" : "ws";
    const host = base.replace(/^https?:\/\//, "").replace(/\/.*$/, "");
    return `${scheme}://${host}/session`;
}
